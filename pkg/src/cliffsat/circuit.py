"""Clifford circuits over the gate alphabet {H, S, X, Y, Z, CNOT} with a
QASM-2 text form.

The text subset: an OPENQASM 2.0 header and include lines (accepted and
ignored), exactly one qreg declaration, single-qubit statements like
"h q[0];", two-qubit "cx q[c],q[t];" with the control first, and //
comments. Statements are whitespace-insensitive and end with ';'.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np


class GateKind(Enum):
    H = "h"
    S = "s"
    X = "x"
    Y = "y"
    Z = "z"
    CNOT = "cx"


_SINGLE_KINDS = (GateKind.H, GateKind.S, GateKind.X, GateKind.Y, GateKind.Z)
_KIND_BY_NAME = {k.value: k for k in GateKind}


@dataclass(frozen=True)
class Gate:
    """One gate application; control is None for single-qubit kinds."""

    kind: GateKind
    target: int
    control: int | None = None

    def __post_init__(self) -> None:
        if self.target < 0:
            raise ValueError(f"negative target {self.target}")
        if self.kind is GateKind.CNOT:
            if self.control is None:
                raise ValueError("CNOT needs a control qubit")
            if self.control < 0:
                raise ValueError(f"negative control {self.control}")
            if self.control == self.target:
                raise ValueError("CNOT control and target must differ")
        elif self.control is not None:
            raise ValueError(f"{self.kind.name} takes no control qubit")

    @classmethod
    def h(cls, q: int) -> Gate:
        return cls(GateKind.H, q)

    @classmethod
    def s(cls, q: int) -> Gate:
        return cls(GateKind.S, q)

    @classmethod
    def x(cls, q: int) -> Gate:
        return cls(GateKind.X, q)

    @classmethod
    def y(cls, q: int) -> Gate:
        return cls(GateKind.Y, q)

    @classmethod
    def z(cls, q: int) -> Gate:
        return cls(GateKind.Z, q)

    @classmethod
    def cnot(cls, control: int, target: int) -> Gate:
        return cls(GateKind.CNOT, target, control)

    def __str__(self) -> str:
        if self.kind is GateKind.CNOT:
            return f"cx q[{self.control}],q[{self.target}]"
        return f"{self.kind.value} q[{self.target}]"


@dataclass(frozen=True)
class Circuit:
    """A fixed-width gate list; value-compares by width and gate sequence."""

    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError(f"circuit needs at least one qubit, got {self.num_qubits}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for pos, g in enumerate(self.gates):
            if g.target >= self.num_qubits or (g.control is not None and g.control >= self.num_qubits):
                raise ValueError(f"gate {pos} ({g}) out of range for {self.num_qubits} qubits")

    @property
    def num_gates(self) -> int:
        return len(self.gates)

    @property
    def num_signals(self) -> int:
        """Number of cut points: one before the first gate and one after each."""
        return len(self.gates) + 1

    def __str__(self) -> str:
        return emit_circuit(self)


class CircuitParseError(ValueError):
    """Syntax or semantic error in circuit text, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_GATE_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s+(.+)$")
_OPERAND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


def _split_statements(text: str) -> list[tuple[str, int, int]]:
    """Split into ';'-terminated statements, tracking each statement's start."""
    statements = []
    buf: list[str] = []
    line0 = col0 = 0
    last_line = 1
    for lineno, line in enumerate(text.splitlines(), 1):
        last_line = lineno
        code = line.split("//", 1)[0]
        for colno, ch in enumerate(code, 1):
            if ch == ";":
                statements.append(("".join(buf).strip(), line0 or lineno, col0 or 1))
                buf = []
                line0 = col0 = 0
            else:
                if not line0 and not ch.isspace():
                    line0, col0 = lineno, colno
                buf.append(ch)
        buf.append(" ")
    if "".join(buf).strip():
        raise CircuitParseError("statement is missing ';'", line0, col0)
    if not statements:
        raise CircuitParseError("no statements found", last_line, 1)
    return statements


def parse_circuit(text: str) -> Circuit:
    """Parse QASM-2 subset text into a Circuit.

    Raises CircuitParseError (with line and column) on unknown gates, missing
    or repeated qreg, bad operands, or out-of-range indices.
    """
    reg_name: str | None = None
    num_qubits = 0
    gates: list[Gate] = []

    def operand(text_op: str, line: int, col: int) -> int:
        m = _OPERAND_RE.match(text_op.strip())
        if not m:
            raise CircuitParseError(f"malformed operand {text_op.strip()!r}", line, col)
        if m.group(1) != reg_name:
            raise CircuitParseError(f"unknown register {m.group(1)!r}", line, col)
        idx = int(m.group(2))
        if idx >= num_qubits:
            raise CircuitParseError(f"qubit index {idx} out of range for qreg of size {num_qubits}", line, col)
        return idx

    for stmt, line, col in _split_statements(text):
        if not stmt:
            continue
        head = stmt.split(None, 1)[0]
        if head == "OPENQASM":
            if stmt != "OPENQASM 2.0":
                raise CircuitParseError(f"unsupported version statement {stmt!r}", line, col)
            continue
        if head == "include":
            continue
        if head == "qreg":
            m = _QREG_RE.match(stmt)
            if not m:
                raise CircuitParseError(f"malformed qreg statement {stmt!r}", line, col)
            if reg_name is not None:
                raise CircuitParseError("only one qreg is supported", line, col)
            reg_name = m.group(1)
            num_qubits = int(m.group(2))
            if num_qubits < 1:
                raise CircuitParseError("qreg must declare at least one qubit", line, col)
            continue
        m = _GATE_RE.match(stmt)
        if not m:
            raise CircuitParseError(f"malformed statement {stmt!r}", line, col)
        name, rest = m.group(1), m.group(2)
        kind = _KIND_BY_NAME.get(name)
        if kind is None:
            raise CircuitParseError(f"unsupported gate {name!r}", line, col)
        if reg_name is None:
            raise CircuitParseError("gate statement before qreg declaration", line, col)
        operands = rest.split(",")
        if kind is GateKind.CNOT:
            if len(operands) != 2:
                raise CircuitParseError("cx takes exactly two operands", line, col)
            c = operand(operands[0], line, col)
            t = operand(operands[1], line, col)
            if c == t:
                raise CircuitParseError("cx control and target must differ", line, col)
            gates.append(Gate.cnot(c, t))
        else:
            if len(operands) != 1:
                raise CircuitParseError(f"{name} takes exactly one operand", line, col)
            gates.append(Gate(kind, operand(operands[0], line, col)))

    if reg_name is None:
        raise CircuitParseError("missing qreg declaration", 1, 1)
    return Circuit(num_qubits, tuple(gates))


def emit_circuit(c: Circuit) -> str:
    """Render a Circuit back to the QASM-2 subset; parse(emit(c)) == c."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    lines.extend(f"{g};" for g in c.gates)
    return "\n".join(lines) + "\n"


def random_clifford_circuit(
    n: int,
    num_gates: int,
    seed: int,
    kinds: tuple[GateKind, ...] | None = None,
) -> Circuit:
    """Seed-deterministic random circuit: each gate kind drawn uniformly from
    `kinds`, qubits uniform (CNOT control and target distinct).

    Default alphabet is all six kinds; with n == 1 the default drops CNOT,
    and passing CNOT explicitly for n == 1 is an error.
    """
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    if num_gates < 0:
        raise ValueError(f"negative gate count {num_gates}")
    if kinds is None:
        kinds = tuple(k for k in GateKind if k is not GateKind.CNOT or n > 1)
    else:
        kinds = tuple(kinds)
        if not kinds:
            raise ValueError("empty gate alphabet")
        if GateKind.CNOT in kinds and n < 2:
            raise ValueError("CNOT needs at least two qubits")

    rng = np.random.default_rng(seed)
    kind_idx = rng.integers(0, len(kinds), size=num_gates)
    first = rng.integers(0, n, size=num_gates)
    # Uniform CNOT target among the n-1 qubits other than the control.
    offset = rng.integers(1, n, size=num_gates) if n > 1 else np.ones(num_gates, dtype=np.int64)

    gates = []
    for i in range(num_gates):
        kind = kinds[kind_idx[i]]
        q = int(first[i])
        if kind is GateKind.CNOT:
            gates.append(Gate.cnot(q, (q + int(offset[i])) % n))
        else:
            gates.append(Gate(kind, q))
    return Circuit(n, tuple(gates))


def remove_random_gate(c: Circuit, seed: int) -> Circuit:
    """Drop one uniformly chosen gate; errors on an empty circuit."""
    if not c.gates:
        raise ValueError("cannot remove a gate from an empty circuit")
    rng = np.random.default_rng(seed)
    drop = int(rng.integers(0, len(c.gates)))
    return Circuit(c.num_qubits, c.gates[:drop] + c.gates[drop + 1 :])


# X, Y, Z rewritten over {H, S, CNOT} via X = H S S H, Z = S S, Y = S S H S S H
# (equal up to global phase, which tableaux cannot see).
_GENERATOR_EXPANSION = {
    GateKind.X: (GateKind.H, GateKind.S, GateKind.S, GateKind.H),
    GateKind.Z: (GateKind.S, GateKind.S),
    GateKind.Y: (GateKind.S, GateKind.S, GateKind.H, GateKind.S, GateKind.S, GateKind.H),
}


def decompose_to_generators(c: Circuit) -> Circuit:
    """Rewrite X, Y, Z gates over the generator alphabet {H, S, CNOT}."""
    gates: list[Gate] = []
    for g in c.gates:
        expansion = _GENERATOR_EXPANSION.get(g.kind)
        if expansion is None:
            gates.append(g)
        else:
            gates.extend(Gate(kind, g.target) for kind in expansion)
    return Circuit(c.num_qubits, tuple(gates))
