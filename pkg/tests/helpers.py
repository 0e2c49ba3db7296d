"""Independent oracles used across the test suite.

Everything here is deliberately naive and derived from first principles
(dense linear algebra, exhaustive enumeration) so it cannot share bugs with
the package code it checks.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np

from cliffsat.circuit import Circuit, GateKind

# Amplitude index convention everywhere: qubit j lives at bit j, so basis
# index b encodes the state |b_{n-1} ... b_1 b_0>.

_I2 = np.eye(2, dtype=complex)
GATE_MATRIX = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_MATRIX = {
    "I": _I2,
    "X": GATE_MATRIX[GateKind.X],
    "Y": GATE_MATRIX[GateKind.Y],
    "Z": GATE_MATRIX[GateKind.Z],
}


def op_on_qubits(n: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Tensor product placing each 2x2 op on its qubit, identity elsewhere.

    With qubit 0 at the least significant bit, qubit n-1 is the leftmost kron
    factor.
    """
    factors = [ops.get(q, _I2) for q in range(n - 1, -1, -1)]
    return reduce(np.kron, factors)


def gate_unitary(n: int, kind: GateKind, target: int, control: int | None = None) -> np.ndarray:
    if kind is GateKind.CNOT:
        p0 = np.array([[1, 0], [0, 0]], dtype=complex)
        p1 = np.array([[0, 0], [0, 1]], dtype=complex)
        return op_on_qubits(n, {control: p0}) + op_on_qubits(
            n, {control: p1, target: PAULI_MATRIX["X"]}
        )
    return op_on_qubits(n, {target: GATE_MATRIX[kind]})


def simulate_dense(circuit: Circuit, input_bits: str) -> np.ndarray:
    """State vector after the circuit, by dense matrix-vector products."""
    n = circuit.num_qubits
    assert len(input_bits) == n
    index = sum(1 << i for i, ch in enumerate(input_bits) if ch == "1")
    vec = np.zeros(1 << n, dtype=complex)
    vec[index] = 1.0
    for g in circuit.gates:
        vec = gate_unitary(n, g.kind, g.target, g.control) @ vec
    return vec


def pauli_label_matrix(label: str) -> np.ndarray:
    """Matrix of a signed Pauli string like '-IZ' (letter j = qubit j)."""
    sign = {"+": 1.0, "-": -1.0}[label[0]]
    letters = label[1:]
    n = len(letters)
    mats = {j: PAULI_MATRIX[letters[j]] for j in range(n)}
    return sign * op_on_qubits(n, mats)


def same_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Per-amplitude equality after aligning global phase on the largest entry."""
    idx = int(np.argmax(np.abs(a)))
    if abs(a[idx]) < tol:
        return bool(np.max(np.abs(b)) < tol)
    phase = b[idx] / a[idx]
    if abs(abs(phase) - 1.0) > 1e-6:
        return False
    return bool(np.max(np.abs(b - phase * a)) <= tol)


# ---------------------------------------------------------------------------
# Brute-force SAT
# ---------------------------------------------------------------------------

def brute_force_models(num_vars: int, clauses: list[list[int]]) -> list[tuple[int, ...]]:
    """All satisfying assignments by exhaustive enumeration (vars from 1)."""
    models = []
    for bits in itertools.product((0, 1), repeat=num_vars):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses):
            models.append(bits)
    return models


def brute_force_sat(num_vars: int, clauses: list[list[int]]) -> bool:
    for bits in itertools.product((0, 1), repeat=num_vars):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses):
            return True
    return False


def parse_dimacs(text: str) -> tuple[int, int, list[list[int]]]:
    """(num_vars, num_clauses from header, clause list) of DIMACS text."""
    num_vars = num_clauses = 0
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        tokens.extend(int(t) for t in line.split())
    clauses: list[list[int]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(current)
            current = []
        else:
            current.append(tok)
    assert not current, "trailing clause without terminator"
    return num_vars, num_clauses, clauses


# ---------------------------------------------------------------------------
# Expected CNF models from the transition structure
# ---------------------------------------------------------------------------

def chain_models(res, symbols, label: str) -> set[tuple[int, ...]]:
    """The intended model set: one total assignment per input chain,
    projected over all variables of the block (assumes the block is the whole
    formula's variable range)."""
    m = symbols.bits_per_signal
    num_vars = symbols.num_vars
    models = set()
    for k0 in res.transitions.domains[0]:
        ids = [k0]
        for pairs in res.transitions.per_gate:
            ids.append(dict(pairs)[ids[-1]])
        bits = [0] * num_vars
        for s, k in enumerate(ids):
            for j in range(m):
                bits[symbols.var(label, s, j) - 1] = (k >> j) & 1
        models.add(tuple(bits))
    return models


# ---------------------------------------------------------------------------
# Minimal SMT-LIB2 QF_BV reader/evaluator
# ---------------------------------------------------------------------------

def _tokenize_sexpr(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read_sexprs(tokens: list[str]):
    stack: list[list] = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    assert len(stack) == 1, "unbalanced parentheses"
    return stack[0]


class Smt2Script:
    """Parsed QF_BV script: declared bitvector constants and assertions.

    Supports exactly the constructs the package emits: declare-const with
    (_ BitVec m), assertions over =, or, not, =>, and #b literals.
    """

    def __init__(self, text: str):
        self.consts: dict[str, int] = {}
        self.assertions: list = []
        self.has_check_sat = False
        for expr in _read_sexprs(_tokenize_sexpr(text)):
            head = expr[0]
            if head == "set-logic":
                assert expr[1] == "QF_BV"
            elif head == "declare-const":
                name = expr[1]
                sort = expr[2]
                assert sort[0] == "_" and sort[1] == "BitVec"
                self.consts[name] = int(sort[2])
            elif head == "assert":
                self.assertions.append(expr[1])
            elif head == "check-sat":
                self.has_check_sat = True
            else:
                raise AssertionError(f"unsupported command {head}")

    def _eval(self, expr, env: dict[str, int]):
        if isinstance(expr, str):
            if expr.startswith("#b"):
                return int(expr[2:], 2)
            return env[expr]
        op = expr[0]
        if op == "=":
            return self._eval(expr[1], env) == self._eval(expr[2], env)
        if op == "not":
            return not self._eval(expr[1], env)
        if op == "or":
            return any(self._eval(arg, env) for arg in expr[1:])
        if op == "=>":
            return (not self._eval(expr[1], env)) or self._eval(expr[2], env)
        raise AssertionError(f"unsupported operator {op}")

    def holds(self, env: dict[str, int]) -> bool:
        """All assertions true under the given constant values?"""
        return all(self._eval(a, env) for a in self.assertions)

    def enumerate_models(self) -> list[dict[str, int]]:
        """Exhaustive model list; only sensible for tiny scripts."""
        names = sorted(self.consts)
        widths = [self.consts[name] for name in names]
        total_bits = sum(widths)
        assert total_bits <= 22, f"too many bits to enumerate ({total_bits})"
        models = []
        for values in itertools.product(*(range(1 << w) for w in widths)):
            env = dict(zip(names, values))
            if self.holds(env):
                models.append(env)
        return models
