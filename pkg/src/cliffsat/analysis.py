"""Reachable-state analysis of Clifford circuits.

A circuit with |G| gates has |G|+1 signals: s_0 before the first gate and
s_{i+1} after gate i. Starting from v input states, each signal's domain
D(s_i) is the set of states reachable there, and each gate induces a
deterministic transition relation between consecutive domains. States are
interned in a StateRegistry and referred to by dense integer ids; the input
states always occupy ids 0..v-1 in the order given.

In canonical mode (the default) states are keyed by their canonical tableau,
so two generator sets describing the same state share an id. Raw mode keys
tableaux verbatim, which counts presentations rather than states; it exists
for diagnostics and state-count experiments only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit
from .stabilizer import (
    Tableau,
    _KIND_CODE,
    _apply_gate_packed,
    _canonicalize_packed,
    tableau_from_basis_state,
)

_MODES = ("canonical", "raw")

_PackedState = tuple[tuple[int, ...], int]


class StateRegistry:
    """Interning table mapping tableaux to dense ids (0, 1, 2, ... in first-seen
    order) and back. The keying mode is fixed at construction."""

    __slots__ = ("mode", "n", "_ids", "_states")

    def __init__(self, mode: str = "canonical"):
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        self.mode = mode
        self.n: int | None = None
        self._ids: dict[_PackedState, int] = {}
        self._states: list[_PackedState] = []

    def __len__(self) -> int:
        return len(self._states)

    def _key_of(self, n: int, packed: _PackedState) -> _PackedState:
        if self.mode == "raw":
            return packed
        rows, signs = _canonicalize_packed(n, list(packed[0]), packed[1])
        return tuple(rows), signs

    def _register_key(self, key: _PackedState) -> int:
        sid = self._ids.get(key)
        if sid is None:
            sid = len(self._states)
            self._ids[key] = sid
            self._states.append(key)
        return sid

    def register(self, t: Tableau) -> int:
        """Intern a tableau (canonicalized first in canonical mode); returns its id."""
        if self.n is None:
            self.n = t.n
        elif t.n != self.n:
            raise ValueError(f"registry holds {self.n}-qubit states, got {t.n}")
        return self._register_key(self._key_of(t.n, t._packed()))

    def lookup(self, t: Tableau) -> int | None:
        """Id of a previously interned tableau, or None."""
        if self.n is None or t.n != self.n:
            return None
        return self._ids.get(self._key_of(t.n, t._packed()))

    def state(self, sid: int) -> Tableau:
        """The interned tableau for an id (canonical form in canonical mode)."""
        if not 0 <= sid < len(self._states):
            raise IndexError(f"state id {sid} out of range ({len(self._states)} states)")
        rows, signs = self._states[sid]
        return Tableau._from_packed(self.n, rows, signs)


@dataclass(frozen=True)
class TransitionTable:
    """Per-gate transitions and per-signal domains, all as state ids.

    per_gate[i] lists (from_id, to_id) pairs for gate i, ascending by from_id.
    domains[i] is D(s_i) in ascending id order; len(domains) == num gates + 1.
    """

    per_gate: tuple[tuple[tuple[int, int], ...], ...]
    domains: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AnalysisResult:
    """Registry, transition structure, and encoding dimensions for one circuit.

    bits_per_signal is ceil(log2(num_states)), with a one-bit floor so a
    single-state system still gets a variable per signal.
    """

    registry: StateRegistry
    transitions: TransitionTable
    num_signals: int
    bits_per_signal: int

    @property
    def num_states(self) -> int:
        return len(self.registry)

    @property
    def num_inputs(self) -> int:
        return len(self.transitions.domains[0])


def _bits_for(num_states: int) -> int:
    return max(1, (num_states - 1).bit_length())


def _register_inputs(registry: StateRegistry, n: int, inputs: list[Tableau] | None) -> list[int]:
    if inputs is None:
        inputs = [tableau_from_basis_state("0" * n)]
    if not inputs:
        raise ValueError("need at least one input state")
    ids = []
    for t in inputs:
        if t.n != n:
            raise ValueError(f"input tableau has {t.n} qubits, circuit has {n}")
        sid = registry.register(t)
        if sid != len(ids):
            raise ValueError(f"duplicate input state at position {len(ids)}")
        ids.append(sid)
    return ids


def _walk(
    circuit: Circuit,
    input_ids: list[int],
    registry: StateRegistry,
    memo: dict[tuple[int, int, int, int], int],
) -> TransitionTable:
    """Propagate the input-id set through the circuit, interning new states.

    memo caches (state id, gate) -> successor id across walks sharing a
    registry; hits skip the tableau update and canonicalization entirely.
    """
    n = circuit.num_qubits
    canonical = registry.mode == "canonical"
    states = registry._states
    domains = [tuple(sorted(input_ids))]
    per_gate = []
    current = domains[0]
    for g in circuit.gates:
        code = _KIND_CODE[g.kind]
        a = g.control if g.control is not None else g.target
        b = g.target
        pairs = []
        for k in current:
            key = (k, code, a, b)
            to = memo.get(key)
            if to is None:
                rows, signs = states[k]
                rl = list(rows)
                signs = _apply_gate_packed(n, rl, signs, code, a, b)
                if canonical:
                    rl, signs = _canonicalize_packed(n, rl, signs)
                to = registry._register_key((tuple(rl), signs))
                memo[key] = to
            pairs.append((k, to))
        per_gate.append(tuple(pairs))
        current = tuple(sorted({to for _, to in pairs}))
        domains.append(current)
    return TransitionTable(tuple(per_gate), tuple(domains))


def structural_analysis(
    circuit: Circuit,
    inputs: list[Tableau] | None = None,
    mode: str = "canonical",
) -> AnalysisResult:
    """Walk the circuit from the given inputs (default: the all-zero state) and
    return the interned states, transitions, and bit width per signal."""
    registry = StateRegistry(mode)
    input_ids = _register_inputs(registry, circuit.num_qubits, inputs)
    table = _walk(circuit, input_ids, registry, {})
    return AnalysisResult(registry, table, circuit.num_signals, _bits_for(len(registry)))


def joint_analysis(
    a: Circuit,
    b: Circuit,
    inputs: list[Tableau] | None = None,
    mode: str = "canonical",
) -> tuple[AnalysisResult, AnalysisResult]:
    """Analyze two same-width circuits over one shared registry so their state
    ids are directly comparable. Both results use the bit width of the final
    shared state count."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"circuits differ in width: {a.num_qubits} vs {b.num_qubits}")
    registry = StateRegistry(mode)
    input_ids = _register_inputs(registry, a.num_qubits, inputs)
    memo: dict[tuple[int, int, int, int], int] = {}
    table_a = _walk(a, input_ids, registry, memo)
    table_b = _walk(b, input_ids, registry, memo)
    m = _bits_for(len(registry))
    return (
        AnalysisResult(registry, table_a, a.num_signals, m),
        AnalysisResult(registry, table_b, b.num_signals, m),
    )


def unique_state_count(
    circuit: Circuit,
    inputs: list[Tableau] | None = None,
    mode: str = "canonical",
) -> int:
    """Number of distinct states seen across all signals (|S|)."""
    return structural_analysis(circuit, inputs, mode).num_states
