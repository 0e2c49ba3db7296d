"""
How many distinct states does a random circuit visit?
=====================================================

Walk random circuits of growing length and count the distinct states seen
across all signals. Raw counting treats every generator presentation as its
own state; canonical counting merges presentations of the same state first.

Both saturate: a single qubit has 6 stabilizer states, two qubits have 60
(and 360 raw presentations reachable gate by gate). The plateau is what
keeps the later CNF encodings small.

Run:  python3 demos/02_state_counts.py
"""

from cliffsat import random_clifford_circuit, unique_state_count

print(f"{'n':>2} {'gates':>6} {'raw':>6} {'canonical':>10}")
for n in (1, 2):
    for num_gates in (10, 50, 200, 1000, 5000):
        circuit = random_clifford_circuit(n, num_gates, seed=7)
        raw = unique_state_count(circuit, mode="raw")
        canonical = unique_state_count(circuit, mode="canonical")
        print(f"{n:>2} {num_gates:>6} {raw:>6} {canonical:>10}")
    print()

# the canonical plateau follows 2^n * prod_{k=1..n} (2^k + 1)
for n in (1, 2, 3, 4):
    count = 1 << n
    for k in range(1, n + 1):
        count *= (1 << k) + 1
    print(f"distinct stabilizer states on {n} qubit(s): {count}")
