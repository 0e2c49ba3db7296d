"""
From circuit walk to CNF: encoding the Bell preparation
=======================================================

Analyze the Bell circuit over all four basis inputs, encode the result as
CNF, and show that the formula's models are exactly the four signal chains:
each model assigns every signal the binary id of the state reached there.

Run:  python3 demos/03_encoding.py
"""

from cliffsat import (
    Circuit,
    Gate,
    emit_dimacs,
    encode_circuit,
    enumerate_models,
    structural_analysis,
    tableau_from_basis_state,
)

circuit = Circuit(2, (Gate.h(1), Gate.cnot(1, 0)))
inputs = [
    tableau_from_basis_state("".join("1" if (k >> i) & 1 else "0" for i in range(2)))
    for k in range(4)
]

# the walk interns 12 distinct states, so each signal needs 4 bits
res = structural_analysis(circuit, inputs=inputs)
print(f"states: {res.num_states}, bits per signal: {res.bits_per_signal}")
print("domains:", [list(d) for d in res.transitions.domains])
for i, pairs in enumerate(res.transitions.per_gate):
    print(f"gate {i} transitions:", " ".join(f"{k}->{l}" for k, l in pairs))
print()

enc = encode_circuit(res)
print(f"CNF: {enc.formula.num_vars} variables, {enc.formula.num_clauses} clauses")
print("clause families:", enc.clause_counts)
print()
print(emit_dimacs(enc).splitlines()[0])  # the symbol-layout comment
print()

# every model is one input's chain of state ids, bit-encoded signal by signal
def chain_of(model):
    ids = []
    for s in range(res.num_signals):
        vars_ = enc.symbols.signal_vars("s", s)
        ids.append(sum(model[v - 1] << j for j, v in enumerate(vars_)))
    return ids

for ids in sorted(chain_of(m) for m in enumerate_models(enc.formula)):
    print("model ->", " -> ".join(map(str, ids)))
