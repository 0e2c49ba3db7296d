"""
Equivalence checking with a miter
=================================

Two checks end to end. First a pair that is equal on every input (Z versus
S applied twice), then a random circuit against a copy with one gate
deleted. The checker builds a joint CNF whose models are distinguishing
inputs; unsatisfiable means equivalent on the drawn input set, satisfiable
yields a counterexample that is replayed through both circuits before being
reported.

Run:  python3 demos/04_equivalence.py
"""

from cliffsat import (
    Circuit,
    Gate,
    Verdict,
    check_equivalence,
    random_clifford_circuit,
    remove_random_gate,
)


def report(name, result):
    s = result.stats
    print(f"{name}: {result.verdict.value}")
    print(
        f"  vars={s.num_vars} clauses={s.num_clauses} states={s.num_states} "
        f"prep={s.t_prep * 1e3:.1f}ms solve={s.t_solve * 1e3:.1f}ms conflicts={s.conflicts}"
    )
    if result.verdict is Verdict.NOT_EQUIVALENT:
        cex = result.counterexample
        print(f"  distinguishing input (id {cex.input_id}):")
        for label in cex.input_tableau.labels():
            print(f"    {label}")
        print(f"  final state ids: a={cex.output_id_a} b={cex.output_id_b}")


# Z equals S^2 exactly, so even random stabilizer inputs find no difference
z = Circuit(1, (Gate.z(0),))
ss = Circuit(1, (Gate.s(0), Gate.s(0)))
report("z vs s;s", check_equivalence(z, ss, num_inputs=6, input_kind="random_stabilizer"))
print()

# deleting one gate from a long random circuit is almost always detectable
circuit = random_clifford_circuit(8, 1000, seed=5)
mutated = remove_random_gate(circuit, seed=5)
report("1000 gates vs same", check_equivalence(circuit, circuit, num_inputs=16))
print()
report("1000 gates vs one removed", check_equivalence(circuit, mutated, num_inputs=16))
