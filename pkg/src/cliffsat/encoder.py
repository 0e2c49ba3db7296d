"""Propositional encoding of analyzed circuits.

Each signal s_i gets m = bits_per_signal Boolean variables holding its state
id in binary (bit 0 = least significant). Variables are numbered densely from
1, signal-major then bit-minor, block by block. The clause set per circuit:

  input       binary comparator forcing [s_0] < v, so s_0 names an input id
              (input ids are 0..v-1 by construction)
  functional  for every gate transition k -> l, the biconditional
              (bits(s_i) = k) <-> (bits(s_{i+1}) = l), as 2m clauses of
              width m+1

Those two families pin every satisfying assignment to exactly one reachable
transition chain, so no further blocking is needed. Two optional modes add
redundant blocking on interior signals: "bound" appends comparators
[s_i] < |S|, and "domain" replaces the comparator with explicit forbid
clauses for every id outside D(s_i) at every signal (exponential in m; meant
for small instances). All three modes have identical model sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import AnalysisResult

_BLOCKING_MODES = ("input", "bound", "domain")


class SymbolTable:
    """Variable numbering for one or more signal blocks.

    A block is a labeled run of signals (one circuit's s_0..s_G, or the
    one-signal "diff" block of a miter). var(label, s, b) is the DIMACS
    variable of bit b of signal s in that block.
    """

    __slots__ = ("bits_per_signal", "_blocks", "_num_vars")

    def __init__(self, bits_per_signal: int):
        if bits_per_signal < 1:
            raise ValueError("bits_per_signal must be positive")
        self.bits_per_signal = bits_per_signal
        self._blocks: dict[str, tuple[int, int]] = {}
        self._num_vars = 0

    def add_block(self, label: str, num_signals: int) -> None:
        if label in self._blocks:
            raise ValueError(f"duplicate block label {label!r}")
        if num_signals < 1:
            raise ValueError("block needs at least one signal")
        self._blocks[label] = (self._num_vars + 1, num_signals)
        self._num_vars += self.bits_per_signal * num_signals

    @property
    def num_vars(self) -> int:
        return self._num_vars

    def blocks(self) -> dict[str, tuple[int, int]]:
        """label -> (first variable, signal count), in layout order."""
        return dict(self._blocks)

    def block_signals(self, label: str) -> int:
        return self._blocks[label][1]

    def var(self, label: str, signal: int, bit: int) -> int:
        first, num_signals = self._blocks[label]
        if not 0 <= signal < num_signals:
            raise IndexError(f"signal {signal} out of range for block {label!r}")
        if not 0 <= bit < self.bits_per_signal:
            raise IndexError(f"bit {bit} out of range (m={self.bits_per_signal})")
        return first + signal * self.bits_per_signal + bit

    def signal_vars(self, label: str, signal: int) -> list[int]:
        base = self.var(label, signal, 0)
        return list(range(base, base + self.bits_per_signal))

    def describe(self) -> list[str]:
        m = self.bits_per_signal
        lines = [f"{m} bits per signal, variables signal-major bit-minor"]
        for label, (first, num_signals) in self._blocks.items():
            last = first + m * num_signals - 1
            lines.append(f"block {label}: {num_signals} signals, vars {first}..{last}")
        return lines


class CnfFormula:
    """CNF clause set stored as one flat literal array plus clause offsets.

    Literals use DIMACS convention (+v / -v, variables from 1). The `clauses`
    property materializes nested lists and is meant for small formulas; large
    consumers should iterate or read the arrays.
    """

    __slots__ = ("num_vars", "lits", "starts")

    def __init__(self, num_vars: int, lits: np.ndarray, starts: np.ndarray):
        self.num_vars = int(num_vars)
        self.lits = np.asarray(lits, dtype=np.int32)
        self.starts = np.asarray(starts, dtype=np.int64)
        if self.starts.ndim != 1 or len(self.starts) == 0 or self.starts[0] != 0:
            raise ValueError("starts must begin at 0")
        if self.starts[-1] != len(self.lits):
            raise ValueError("starts must end at len(lits)")

    @classmethod
    def from_clauses(cls, num_vars: int, clauses) -> CnfFormula:
        clauses = list(clauses)
        lengths = np.fromiter((len(c) for c in clauses), dtype=np.int64, count=len(clauses))
        lits = np.fromiter(
            (lit for c in clauses for lit in c), dtype=np.int32, count=int(lengths.sum())
        )
        starts = np.zeros(len(clauses) + 1, dtype=np.int64)
        np.cumsum(lengths, out=starts[1:])
        return cls(num_vars, lits, starts)

    @property
    def num_clauses(self) -> int:
        return len(self.starts) - 1

    def clause(self, i: int) -> list[int]:
        return self.lits[self.starts[i] : self.starts[i + 1]].tolist()

    def iter_clauses(self):
        for i in range(self.num_clauses):
            yield self.clause(i)

    @property
    def clauses(self) -> list[list[int]]:
        return list(self.iter_clauses())

    def validate(self) -> None:
        """Check literal ranges and the no-tautology/no-duplicate invariant."""
        if len(self.lits) and (
            (self.lits == 0).any() or int(np.abs(self.lits).max()) > self.num_vars
        ):
            raise ValueError("literal out of range")
        for i in range(self.num_clauses):
            c = self.clause(i)
            seen = set(c)
            if len(seen) != len(c):
                raise ValueError(f"duplicate literal in clause {i}")
            if any(-lit in seen for lit in c):
                raise ValueError(f"clause {i} contains a literal and its negation")


class _FormulaBuilder:
    """Accumulates clause chunks (python lists or 2-D numpy arrays) cheaply."""

    def __init__(self):
        self._lit_chunks: list[np.ndarray] = []
        self._len_chunks: list[np.ndarray] = []
        self.num_clauses = 0

    def add(self, clause: list[int]) -> None:
        self._lit_chunks.append(np.asarray(clause, dtype=np.int32))
        self._len_chunks.append(np.array([len(clause)], dtype=np.int64))
        self.num_clauses += 1

    def add_many(self, clauses: list[list[int]]) -> None:
        for c in clauses:
            self.add(c)

    def add_array(self, block: np.ndarray) -> None:
        """Add a (num_clauses, width) int32 array of fixed-width clauses."""
        count, width = block.shape
        self._lit_chunks.append(np.ascontiguousarray(block, dtype=np.int32).reshape(-1))
        self._len_chunks.append(np.full(count, width, dtype=np.int64))
        self.num_clauses += count

    def build(self, num_vars: int) -> CnfFormula:
        lits = (
            np.concatenate(self._lit_chunks)
            if self._lit_chunks
            else np.empty(0, dtype=np.int32)
        )
        lengths = (
            np.concatenate(self._len_chunks)
            if self._len_chunks
            else np.empty(0, dtype=np.int64)
        )
        starts = np.zeros(len(lengths) + 1, dtype=np.int64)
        np.cumsum(lengths, out=starts[1:])
        return CnfFormula(num_vars, lits, starts)


@dataclass(frozen=True)
class Encoding:
    """A CNF formula plus the structures needed to interpret its variables.

    clause_counts / variable_counts break the totals down by constraint
    category; each sums to the corresponding formula total.
    """

    formula: CnfFormula
    symbols: SymbolTable
    analyses: tuple[AnalysisResult, ...]
    labels: tuple[str, ...]
    clause_counts: dict[str, int]
    variable_counts: dict[str, int]


def _less_than_clauses(signal_vars: list[int], bound: int) -> list[list[int]]:
    """Clauses forcing the unsigned value of signal_vars (bit 0 = LSB) < bound.

    One clause per zero bit of bound-1: the bits above it that are set in
    bound-1 cannot all be set with this bit also set.
    """
    m = len(signal_vars)
    if not 1 <= bound <= 1 << m:
        raise ValueError(f"bound {bound} out of range for {m} bits")
    cap = bound - 1
    clauses = []
    for j in range(m - 1, -1, -1):
        if (cap >> j) & 1:
            continue
        clause = [-signal_vars[t] for t in range(m - 1, j, -1) if (cap >> t) & 1]
        clause.append(-signal_vars[j])
        clauses.append(clause)
    return clauses


def _forbid_clauses(signal_vars: list[int], allowed: tuple[int, ...], m: int) -> np.ndarray:
    """One width-m clause per id outside `allowed`, each falsifying that id."""
    universe = np.arange(1 << m, dtype=np.int64)
    mask = np.ones(1 << m, dtype=bool)
    mask[np.asarray(allowed, dtype=np.int64)] = False
    forbidden = universe[mask]
    bits = ((forbidden[:, None] >> np.arange(m)) & 1).astype(np.int32)
    vars_row = np.asarray(signal_vars, dtype=np.int32)
    return vars_row[None, :] * (1 - 2 * bits)


def _functional_block(res: AnalysisResult, symbols: SymbolTable, label: str) -> np.ndarray | None:
    """All transition biconditionals of one circuit as a fixed-width array.

    Gates act injectively on states, so every gate has exactly v transition
    pairs and the whole family vectorizes into one (2*G*v*m, m+1) buffer.
    """
    m = symbols.bits_per_signal
    per_gate = res.transitions.per_gate
    num_gates = len(per_gate)
    if num_gates == 0:
        return None
    v = len(per_gate[0])
    froms = np.array([[k for k, _ in pairs] for pairs in per_gate], dtype=np.int64)
    tos = np.array([[l for _, l in pairs] for pairs in per_gate], dtype=np.int64)

    shifts = np.arange(m, dtype=np.int64)
    kbits = ((froms[:, :, None] >> shifts) & 1).astype(np.int32)
    lbits = ((tos[:, :, None] >> shifts) & 1).astype(np.int32)

    first = symbols.var(label, 0, 0)
    vf = (first + m * np.arange(num_gates, dtype=np.int64)[:, None] + shifts).astype(np.int32)
    vt = vf + m

    ant_f = vf[:, None, :] * (1 - 2 * kbits)
    con_f = vt[:, None, :] * (2 * lbits - 1)
    ant_b = vt[:, None, :] * (1 - 2 * lbits)
    con_b = vf[:, None, :] * (2 * kbits - 1)

    buf = np.empty((num_gates, 2, v, m, m + 1), dtype=np.int32)
    buf[:, 0, :, :, :m] = ant_f[:, :, None, :]
    buf[:, 0, :, :, m] = con_f
    buf[:, 1, :, :, :m] = ant_b[:, :, None, :]
    buf[:, 1, :, :, m] = con_b
    return buf.reshape(-1, m + 1)


def _encode_block(
    builder: _FormulaBuilder,
    res: AnalysisResult,
    symbols: SymbolTable,
    label: str,
    blocking: str,
) -> dict[str, int]:
    """Emit one circuit's clauses into the builder; returns per-category counts."""
    m = symbols.bits_per_signal
    counts: dict[str, int] = {}
    domains = res.transitions.domains
    v = len(domains[0])

    if blocking in ("input", "bound"):
        before = builder.num_clauses
        builder.add_many(_less_than_clauses(symbols.signal_vars(label, 0), v))
        counts["input"] = builder.num_clauses - before

    before = builder.num_clauses
    block = _functional_block(res, symbols, label)
    if block is not None:
        builder.add_array(block)
    counts["functional"] = builder.num_clauses - before

    if blocking == "bound":
        before = builder.num_clauses
        num_states = res.num_states
        for s in range(1, len(domains)):
            builder.add_many(_less_than_clauses(symbols.signal_vars(label, s), num_states))
        counts["bound"] = builder.num_clauses - before
    elif blocking == "domain":
        before = builder.num_clauses
        for s, domain in enumerate(domains):
            block = _forbid_clauses(symbols.signal_vars(label, s), domain, m)
            if len(block):
                builder.add_array(block)
        counts["domain"] = builder.num_clauses - before
    return counts


def encode_circuit(res: AnalysisResult, blocking: str = "input", label: str = "s") -> Encoding:
    """Encode one analyzed circuit as CNF.

    blocking selects the redundant-blocking mode ("input", "bound", or
    "domain", see module docstring); every mode yields the same model set,
    whose models correspond one-to-one with the v transition chains.
    """
    if blocking not in _BLOCKING_MODES:
        raise ValueError(f"blocking must be one of {_BLOCKING_MODES}, got {blocking!r}")
    symbols = SymbolTable(res.bits_per_signal)
    symbols.add_block(label, res.num_signals)
    builder = _FormulaBuilder()
    counts = _encode_block(builder, res, symbols, label, blocking)
    formula = builder.build(symbols.num_vars)
    return Encoding(
        formula=formula,
        symbols=symbols,
        analyses=(res,),
        labels=(label,),
        clause_counts=counts,
        variable_counts={"signal": symbols.num_vars},
    )


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def emit_dimacs(enc) -> str:
    """Standard DIMACS CNF text with symbol-layout comment lines.

    Accepts any object with `formula` and `symbols` fields (circuit encodings
    and miters alike).
    """
    formula: CnfFormula = enc.formula
    lines = [f"c {line}" for line in enc.symbols.describe()]
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}")
    lits = formula.lits
    starts = formula.starts
    for i in range(formula.num_clauses):
        row = lits[starts[i] : starts[i + 1]]
        lines.append(" ".join(map(str, row)) + " 0")
    return "\n".join(lines) + "\n"


def _bv(value: int, m: int) -> str:
    return "#b" + format(value, f"0{m}b")


def emit_smt2(enc) -> str:
    """QF_BV rendering: one bitvector constant per signal, domain membership
    disjunctions, and transition implications.

    For two-block encodings (miters) it also asserts input equality and
    final-signal inequality, making the instance satisfiable exactly when the
    CNF miter is.
    """
    m = enc.symbols.bits_per_signal
    lines = ["(set-logic QF_BV)"]
    for label, res in zip(enc.labels, enc.analyses):
        for s in range(res.num_signals):
            lines.append(f"(declare-const {label}{s} (_ BitVec {m}))")
    for label, res in zip(enc.labels, enc.analyses):
        domains = res.transitions.domains
        for s, domain in enumerate(domains):
            if len(domain) == 1:
                lines.append(f"(assert (= {label}{s} {_bv(domain[0], m)}))")
            else:
                terms = " ".join(f"(= {label}{s} {_bv(k, m)})" for k in domain)
                lines.append(f"(assert (or {terms}))")
        for i, pairs in enumerate(res.transitions.per_gate):
            for k, l in pairs:
                lines.append(
                    f"(assert (=> (= {label}{i} {_bv(k, m)}) (= {label}{i + 1} {_bv(l, m)})))"
                )
    if len(enc.labels) == 2:
        la, lb = enc.labels
        ra, rb = enc.analyses
        lines.append(f"(assert (= {la}0 {lb}0))")
        lines.append(f"(assert (not (= {la}{ra.num_signals - 1} {lb}{rb.num_signals - 1})))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
