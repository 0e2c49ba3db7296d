"""Miter-based equivalence checking of Clifford circuits.

Two circuits are checked over a chosen set of input states by encoding both
over one shared state registry, tying their input signals together bit by
bit, and asserting that some output bit differs (difference bits d_j with an
or-clause). The miter CNF is satisfiable exactly when some chosen input
drives the circuits to different final states; an unsat answer certifies
equality on every chosen input.

Counterexamples decoded from a model are always validated by replaying both
circuits on the decoded input tableau, and equivalence verdicts are
cross-checked by walking the transition tables directly, so an encoding or
solver defect surfaces as an EncodingIntegrityError rather than a wrong
verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from .analysis import AnalysisResult, joint_analysis
from .circuit import Circuit, random_clifford_circuit
from .encoder import (
    CnfFormula,
    SymbolTable,
    _encode_block,
    _FormulaBuilder,
)
from .solver import CdclSolver, SolverInterface, SolverResult
from .stabilizer import Tableau, apply_circuit, canonicalize, tableau_from_basis_state

INPUT_KINDS = ("all_zero", "random_basis", "random_stabilizer")

# Gate count of the random state-preparation prefix, per qubit.
_STABILIZER_PREFIX_GATES = 10


class Verdict(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"


class EncodingIntegrityError(RuntimeError):
    """The solver's answer disagrees with direct simulation; a defect in the
    encoding, the solver, or the decoder."""


@dataclass(frozen=True)
class Counterexample:
    """A distinguishing input: state id and tableau, plus both output ids."""

    input_id: int
    input_tableau: Tableau
    output_id_a: int
    output_id_b: int


@dataclass(frozen=True)
class CheckStats:
    """Timing and size figures for one equivalence check (seconds)."""

    t_prep: float
    t_solve: float
    num_vars: int
    num_clauses: int
    num_states: int
    conflicts: int | None


@dataclass(frozen=True)
class EquivalenceResult:
    verdict: Verdict
    counterexample: Counterexample | None
    stats: CheckStats


@dataclass(frozen=True)
class MiterEncoding:
    """Joint CNF of two circuits with linked inputs and contrasted outputs.

    Blocks "a" and "b" hold the circuits' signal variables; block "diff" holds
    the m difference bits. Satisfying models are exactly the input choices
    (among `inputs`) on which the circuits' final states differ.
    """

    formula: CnfFormula
    symbols: SymbolTable
    analyses: tuple[AnalysisResult, AnalysisResult]
    labels: tuple[str, str]
    clause_counts: dict[str, int]
    variable_counts: dict[str, int]
    circuits: tuple[Circuit, Circuit]
    inputs: tuple[Tableau, ...]


def build_miter(
    a: Circuit,
    b: Circuit,
    inputs: Sequence[Tableau],
    mode: str = "canonical",
    blocking: str = "input",
) -> MiterEncoding:
    """Construct the miter CNF for two same-width circuits over given inputs.

    Only canonical state keying is sound here: raw keying can assign distinct
    ids to equal states, turning presentation differences into bogus
    counterexamples, so requesting it raises ValueError.
    """
    if mode != "canonical":
        raise ValueError("miters require canonical mode; raw keying is unsound for equivalence")
    inputs = tuple(inputs)
    if not inputs:
        raise ValueError("need at least one input state")
    res_a, res_b = joint_analysis(a, b, list(inputs))
    m = res_a.bits_per_signal

    symbols = SymbolTable(m)
    symbols.add_block("a", res_a.num_signals)
    symbols.add_block("b", res_b.num_signals)
    symbols.add_block("diff", 1)

    builder = _FormulaBuilder()
    counts: dict[str, int] = {}
    for res, label in ((res_a, "a"), (res_b, "b")):
        for key, val in _encode_block(builder, res, symbols, label, blocking).items():
            counts[key] = counts.get(key, 0) + val

    a0 = symbols.signal_vars("a", 0)
    b0 = symbols.signal_vars("b", 0)
    for j in range(m):
        builder.add([-a0[j], b0[j]])
        builder.add([a0[j], -b0[j]])
    counts["input_link"] = 2 * m

    alast = symbols.signal_vars("a", res_a.num_signals - 1)
    blast = symbols.signal_vars("b", res_b.num_signals - 1)
    dvars = symbols.signal_vars("diff", 0)
    for j in range(m):
        x, y, d = alast[j], blast[j], dvars[j]
        builder.add([-x, -y, -d])
        builder.add([x, y, -d])
        builder.add([x, -y, d])
        builder.add([-x, y, d])
    counts["difference"] = 4 * m

    builder.add(dvars)
    counts["output"] = 1

    formula = builder.build(symbols.num_vars)
    return MiterEncoding(
        formula=formula,
        symbols=symbols,
        analyses=(res_a, res_b),
        labels=("a", "b"),
        clause_counts=counts,
        variable_counts={"signal": m * (res_a.num_signals + res_b.num_signals), "difference": m},
        circuits=(a, b),
        inputs=inputs,
    )


def generate_inputs(n: int, num_inputs: int, kind: str, seed: int) -> list[Tableau]:
    """Draw `num_inputs` pairwise-distinct input states of the requested kind.

    all_zero: the single all-zero basis state (num_inputs must be 1).
    random_basis: uniformly random computational basis states.
    random_stabilizer: all-zero state run through a fresh random circuit of
    10*n gates per draw.
    """
    if kind not in INPUT_KINDS:
        raise ValueError(f"input kind must be one of {INPUT_KINDS}, got {kind!r}")
    if num_inputs < 1:
        raise ValueError("need at least one input")
    if kind == "all_zero":
        if num_inputs != 1:
            raise ValueError("all_zero yields exactly one state; use num_inputs=1")
        return [tableau_from_basis_state("0" * n)]
    if kind == "random_basis" and num_inputs > 1 << n:
        raise ValueError(f"only {1 << n} distinct basis states exist on {n} qubits")

    rng = np.random.default_rng(seed)
    out: list[Tableau] = []
    seen: set = set()
    attempts = 0
    max_attempts = 100 * num_inputs + 100
    while len(out) < num_inputs:
        attempts += 1
        if attempts > max_attempts:
            raise ValueError(
                f"could not draw {num_inputs} distinct {kind} states in {max_attempts} attempts"
            )
        if kind == "random_basis":
            bits = "".join("1" if b else "0" for b in rng.integers(0, 2, size=n))
            t = tableau_from_basis_state(bits)
            key = bits
        else:
            prefix_seed = int(rng.integers(0, 1 << 63))
            prefix = random_clifford_circuit(n, _STABILIZER_PREFIX_GATES * n, prefix_seed)
            t = apply_circuit(tableau_from_basis_state("0" * n), prefix)
            key = canonicalize(t)
        if key in seen:
            continue
        seen.add(key)
        out.append(t)
    return out


def _walk_ids(res: AnalysisResult, start_id: int) -> int:
    """Final state id reached from start_id by following the transition table."""
    k = start_id
    for pairs in res.transitions.per_gate:
        for frm, to in pairs:
            if frm == k:
                k = to
                break
        else:
            raise EncodingIntegrityError(f"state id {k} has no transition entry")
    return k


def _cross_check_equivalent(miter: MiterEncoding) -> None:
    res_a, res_b = miter.analyses
    for k in res_a.transitions.domains[0]:
        if _walk_ids(res_a, k) != _walk_ids(res_b, k):
            raise EncodingIntegrityError(
                f"solver reported equivalence but direct walk differs on input id {k}"
            )


def decode_counterexample(model, miter: MiterEncoding) -> Counterexample:
    """Read the distinguishing input and both outputs out of a miter model,
    then validate them by replaying both circuits on the input tableau.

    `model` may be a solved SolverInterface, a mapping var -> bit, or a
    callable var -> bit. Any inconsistency raises EncodingIntegrityError.
    """
    if isinstance(model, SolverInterface):
        read: Callable[[int], int] = model.model
    elif isinstance(model, Mapping):
        read = model.__getitem__
    elif callable(model):
        read = model
    else:
        raise TypeError(f"cannot read model bits from {type(model).__name__}")

    symbols = miter.symbols
    m = symbols.bits_per_signal

    def signal_value(label: str, signal: int) -> int:
        return sum(int(read(v)) << j for j, v in enumerate(symbols.signal_vars(label, signal)))

    res_a, res_b = miter.analyses
    in_a = signal_value("a", 0)
    in_b = signal_value("b", 0)
    if in_a != in_b:
        raise EncodingIntegrityError(f"input signals disagree in model: {in_a} vs {in_b}")
    if in_a >= res_a.num_inputs:
        raise EncodingIntegrityError(f"model input id {in_a} is not an input (v={res_a.num_inputs})")
    out_a = signal_value("a", res_a.num_signals - 1)
    out_b = signal_value("b", res_b.num_signals - 1)
    if out_a == out_b:
        raise EncodingIntegrityError("model shows equal outputs; no distinguishing input")

    registry = res_a.registry
    input_tableau = registry.state(in_a)
    for circuit, claimed, which in (
        (miter.circuits[0], out_a, "a"),
        (miter.circuits[1], out_b, "b"),
    ):
        replayed = registry.lookup(apply_circuit(input_tableau, circuit))
        if replayed != claimed:
            raise EncodingIntegrityError(
                f"replay of circuit {which} on input id {in_a} reaches state "
                f"{replayed}, model claims {claimed}"
            )
    return Counterexample(in_a, input_tableau, out_a, out_b)


def check_equivalence(
    a: Circuit,
    b: Circuit,
    num_inputs: int = 16,
    input_kind: str = "random_basis",
    seed: int = 0,
    solver_factory: Callable[[], SolverInterface] | None = None,
) -> EquivalenceResult:
    """Check two circuits over drawn inputs: build the miter, solve it, and
    return the validated verdict with timing and size statistics."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"circuits differ in width: {a.num_qubits} vs {b.num_qubits}")
    t0 = time.perf_counter()
    inputs = generate_inputs(a.num_qubits, num_inputs, input_kind, seed)
    miter = build_miter(a, b, inputs)
    solver = solver_factory() if solver_factory is not None else CdclSolver()
    solver.add_formula(miter.formula)
    t_prep = time.perf_counter() - t0

    t1 = time.perf_counter()
    outcome = solver.solve()
    t_solve = time.perf_counter() - t1

    stats = CheckStats(
        t_prep=t_prep,
        t_solve=t_solve,
        num_vars=miter.formula.num_vars,
        num_clauses=miter.formula.num_clauses,
        num_states=miter.analyses[0].num_states,
        conflicts=solver.conflicts,
    )
    if outcome is SolverResult.UNSAT:
        _cross_check_equivalent(miter)
        return EquivalenceResult(Verdict.EQUIVALENT, None, stats)
    return EquivalenceResult(Verdict.NOT_EQUIVALENT, decode_counterexample(solver, miter), stats)
