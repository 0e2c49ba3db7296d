"""
Tracing a Bell-state preparation signal by signal
=================================================

Parse a small circuit file, push the all-zero stabilizer state through it
one gate at a time, and print the generator set at every signal. The final
state is also expanded to a dense state vector for inspection.

Run:  python3 demos/01_bell_trace.py
"""

from pathlib import Path

from cliffsat import (
    apply_gate,
    parse_circuit,
    tableau_from_basis_state,
    to_statevector,
)

circuit = parse_circuit((Path(__file__).parent / "bell.qasm").read_text())
print(f"circuit: {circuit.num_qubits} qubits, {circuit.num_gates} gates")
for gate in circuit.gates:
    print(f"  {gate}")
print()

# signal s_0 is the input state; s_{i+1} follows gate i
t = tableau_from_basis_state("0" * circuit.num_qubits)
print("s0:", " ".join(str(label) for label in t.labels()))
for i, gate in enumerate(circuit.gates, start=1):
    t = apply_gate(t, gate)
    print(f"s{i}:", " ".join(str(label) for label in t.labels()))

# the stabilizer pair {+ZZ, +XX} pins the Bell state (|00> + |11>) / sqrt(2)
print()
print("final state vector:", to_statevector(t).round(6))
