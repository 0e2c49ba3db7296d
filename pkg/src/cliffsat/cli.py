"""Command-line front end: simulate, analyze, encode, check, bench, solve.

Exit codes are a stable contract: 0 success (or equivalent), 1 not
equivalent, 2 usage or internal error. The solve subcommand instead follows
SAT-competition convention (10 satisfiable, 20 unsatisfiable) so it can serve
as an external solver for `check --solver`.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import structural_analysis
from .circuit import CircuitParseError, Circuit, parse_circuit, random_clifford_circuit
from .encoder import emit_dimacs, emit_smt2, encode_circuit
from .equivalence import (
    EncodingIntegrityError,
    Verdict,
    check_equivalence,
)
from .solver import CdclSolver, ProcessSolver, SolverError, SolverResult
from .stabilizer import Tableau, apply_gate, tableau_from_basis_state


class CliError(Exception):
    """Usage-level error raised by subcommand handlers (exit code 2)."""


def _read_circuit(path: str) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    return parse_circuit(text)


def _inputs_from_flag(value: str, n: int) -> list[Tableau] | None:
    """--inputs value: 'zero' (default), 'all-basis', or comma-separated bit
    strings like '00,10,01,11' (character i = qubit i)."""
    if value == "zero":
        return None
    if value == "all-basis":
        if n > 12:
            raise CliError(f"all-basis would enumerate 2^{n} inputs; refusing beyond n=12")
        return [
            tableau_from_basis_state("".join("1" if (k >> i) & 1 else "0" for i in range(n)))
            for k in range(1 << n)
        ]
    out = []
    for bits in value.split(","):
        bits = bits.strip()
        if len(bits) != n or any(ch not in "01" for ch in bits):
            raise CliError(f"input {bits!r} is not a length-{n} bit string")
        out.append(tableau_from_basis_state(bits))
    return out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_simulate(args) -> int:
    circuit = _read_circuit(args.circuit)
    bits = args.input if args.input is not None else "0" * circuit.num_qubits
    if len(bits) != circuit.num_qubits or any(ch not in "01" for ch in bits):
        raise CliError(
            f"input must be {circuit.num_qubits} bits over 0/1, got {bits!r}"
        )
    t = tableau_from_basis_state(bits)
    print("s0: " + " ".join(str(label) for label in t.labels()))
    for i, g in enumerate(circuit.gates, 1):
        t = apply_gate(t, g)
        print(f"s{i}: " + " ".join(str(label) for label in t.labels()))
    return 0


def _cmd_analyze(args) -> int:
    circuit = _read_circuit(args.circuit)
    inputs = _inputs_from_flag(args.inputs, circuit.num_qubits)
    res = structural_analysis(circuit, inputs, args.mode)
    table = res.transitions
    if args.json:
        print(
            json.dumps(
                {
                    "num_states": res.num_states,
                    "bits_per_signal": res.bits_per_signal,
                    "num_signals": res.num_signals,
                    "domain_sizes": [len(d) for d in table.domains],
                }
            )
        )
        for i, pairs in enumerate(table.per_gate):
            print(json.dumps({"gate": i, "transitions": [[k, l] for k, l in pairs]}))
    else:
        print(f"num_states: {res.num_states}")
        print(f"bits_per_signal: {res.bits_per_signal}")
        print(f"num_signals: {res.num_signals}")
        print("domain_sizes: " + " ".join(str(len(d)) for d in table.domains))
        print("transitions:")
        for i, pairs in enumerate(table.per_gate):
            print(f"  gate {i}: " + " ".join(f"{k}->{l}" for k, l in pairs))
    return 0


def _cmd_encode(args) -> int:
    circuit = _read_circuit(args.circuit)
    inputs = _inputs_from_flag(args.inputs, circuit.num_qubits)
    res = structural_analysis(circuit, inputs)
    enc = encode_circuit(res, blocking=args.blocking)
    text = emit_dimacs(enc) if args.format == "dimacs" else emit_smt2(enc)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    print(
        f"num_vars={enc.formula.num_vars} num_clauses={enc.formula.num_clauses}",
        file=sys.stderr,
    )
    return 0


def _cmd_check(args) -> int:
    a = _read_circuit(args.circuit_a)
    b = _read_circuit(args.circuit_b)
    factory = None
    if args.solver != "internal":
        command = args.solver
        factory = lambda: ProcessSolver(command)  # noqa: E731
    result = check_equivalence(
        a,
        b,
        num_inputs=args.inputs,
        input_kind=args.input_kind,
        seed=args.seed,
        solver_factory=factory,
    )
    s = result.stats
    print(f"verdict: {result.verdict.value}")
    print(f"t_prep_ms: {s.t_prep * 1e3:.3f}")
    print(f"t_solve_ms: {s.t_solve * 1e3:.3f}")
    print(f"num_vars: {s.num_vars}")
    print(f"num_clauses: {s.num_clauses}")
    print(f"num_states: {s.num_states}")
    if s.conflicts is not None:
        print(f"conflicts: {s.conflicts}")
    if result.verdict is Verdict.NOT_EQUIVALENT:
        cex = result.counterexample
        print(f"counterexample input id: {cex.input_id}")
        print("counterexample input state:")
        for label in cex.input_tableau.labels():
            print(f"  {label}")
        print(f"final state ids: a={cex.output_id_a} b={cex.output_id_b}")
        return 1
    return 0


def _point_seed(base_seed: int, n: int, num_gates: int, rep: int) -> int:
    words = np.random.SeedSequence(entropy=base_seed, spawn_key=(n, num_gates, rep)).generate_state(2)
    return (int(words[0]) << 32) | int(words[1])


_CSV_FIELDS = (
    "series",
    "n",
    "num_gates",
    "seed",
    "rep",
    "t_prep_ms",
    "t_solve_ms",
    "num_vars",
    "num_clauses",
    "num_states",
    "verdict",
    "conflicts",
)

_MEAN_FIELDS = ("t_prep_ms", "t_solve_ms", "num_vars", "num_clauses", "num_states", "conflicts")


def _bench_point(series: str, n: int, num_gates: int, seed: int, args) -> dict:
    row = {"series": series, "n": n, "num_gates": num_gates, "seed": seed}
    if series == "scaling":
        circuit = random_clifford_circuit(n, num_gates, seed)
        t0 = time.perf_counter()
        res = structural_analysis(circuit)
        enc = encode_circuit(res)
        row["t_prep_ms"] = (time.perf_counter() - t0) * 1e3
        row["num_vars"] = enc.formula.num_vars
        row["num_clauses"] = enc.formula.num_clauses
        row["num_states"] = res.num_states
    elif series == "generators":
        circuit = random_clifford_circuit(n, num_gates, seed)
        t0 = time.perf_counter()
        res = structural_analysis(circuit, mode=args.mode)
        row["t_prep_ms"] = (time.perf_counter() - t0) * 1e3
        row["num_states"] = res.num_states
    else:  # equivalence
        circuit = random_clifford_circuit(n, num_gates, seed)
        num_inputs = args.inputs
        if args.input_kind == "random_basis":
            num_inputs = min(num_inputs, 1 << n)
        result = check_equivalence(
            circuit, circuit, num_inputs=num_inputs, input_kind=args.input_kind, seed=seed
        )
        s = result.stats
        row["t_prep_ms"] = s.t_prep * 1e3
        row["t_solve_ms"] = s.t_solve * 1e3
        row["num_vars"] = s.num_vars
        row["num_clauses"] = s.num_clauses
        row["num_states"] = s.num_states
        row["verdict"] = result.verdict.value
        if s.conflicts is not None:
            row["conflicts"] = s.conflicts
    return row


def _format_row(row: dict) -> dict:
    out = {}
    for key in _CSV_FIELDS:
        value = row.get(key, "")
        if isinstance(value, float):
            value = f"{value:.3f}"
        out[key] = value
    return out


def _cmd_bench(args) -> int:
    qubit_list = [int(tok) for tok in args.qubits.split(",")]
    gate_list = [int(tok) for tok in args.gates.split(",")]
    if args.reps < 1:
        raise CliError("--reps must be at least 1")
    rows = []
    for n in qubit_list:
        for num_gates in gate_list:
            reps = []
            for rep in range(args.reps):
                seed = _point_seed(args.seed, n, num_gates, rep)
                row = _bench_point(args.series, n, num_gates, seed, args)
                row["rep"] = rep
                reps.append(row)
                rows.append(row)
            mean_row = {"series": args.series, "n": n, "num_gates": num_gates, "rep": "mean"}
            for key in _MEAN_FIELDS:
                values = [r[key] for r in reps if key in r]
                if values:
                    mean_row[key] = float(np.mean(values))
            rows.append(mean_row)

    out = open(args.csv, "w", newline="") if args.csv != "-" else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(_format_row(row))
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars = 0
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise CliError(f"malformed problem line {line!r}")
            num_vars = int(parts[2])
            continue
        tokens.extend(int(tok) for tok in line.split())
    clauses: list[list[int]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(current)
            current = []
        else:
            current.append(tok)
    if current:
        clauses.append(current)
    return num_vars, clauses


def _cmd_solve(args) -> int:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {args.file}: {exc}") from exc
    num_vars, clauses = _parse_dimacs(text)
    solver = CdclSolver()
    solver.reserve_vars(num_vars)
    for clause in clauses:
        solver.add_clause(clause)
    if solver.solve() is SolverResult.SAT:
        print(f"c conflicts {solver.conflicts}")
        print("s SATISFIABLE")
        lits = [v if solver.model(v) else -v for v in range(1, max(num_vars, 1) + 1)]
        lits.append(0)
        for k in range(0, len(lits), 20):
            print("v " + " ".join(map(str, lits[k : k + 20])))
        return 10
    print(f"c conflicts {solver.conflicts}")
    print("s UNSATISFIABLE")
    return 20


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffsat",
        description="Clifford circuit simulation, CNF encoding, and SAT equivalence checking.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="print the generator set at every signal")
    p.add_argument("circuit", help="circuit file (QASM-2 subset)")
    p.add_argument("input", nargs="?", default=None, help="input bits, default all zeros")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analyze", help="reachable states, domains, and transitions")
    p.add_argument("circuit")
    p.add_argument("--inputs", default="zero", help="zero | all-basis | comma-separated bit strings")
    p.add_argument("--mode", choices=("canonical", "raw"), default="canonical")
    p.add_argument("--json", action="store_true", help="JSON-lines output")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("encode", help="write the propositional encoding")
    p.add_argument("circuit")
    p.add_argument("--format", choices=("dimacs", "smt2"), default="dimacs")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--inputs", default="zero", help="zero | all-basis | comma-separated bit strings")
    p.add_argument(
        "--blocking",
        choices=("input", "bound", "domain"),
        default="input",
        help="redundant blocking clauses to add (all modes are model-equivalent)",
    )
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("check", help="miter equivalence check of two circuits")
    p.add_argument("circuit_a")
    p.add_argument("circuit_b")
    p.add_argument("--inputs", type=int, default=16, help="number of input states")
    p.add_argument(
        "--input-kind",
        choices=("all_zero", "random_basis", "random_stabilizer"),
        default="random_basis",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--solver",
        default="internal",
        help="'internal' or an external solver command reading a DIMACS file argument",
    )
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bench", help="run an experiment series and write CSV")
    p.add_argument("series", choices=("scaling", "generators", "equivalence"))
    p.add_argument("--qubits", required=True, help="comma-separated qubit counts")
    p.add_argument("--gates", required=True, help="comma-separated gate counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=10, help="repetitions per parameter point")
    p.add_argument("--csv", default="-", help="output path, '-' for stdout")
    p.add_argument(
        "--mode",
        choices=("canonical", "raw"),
        default="raw",
        help="state keying for the generators series (raw counts presentations)",
    )
    p.add_argument(
        "--inputs",
        type=int,
        default=16,
        help="inputs per check (equivalence series; capped at 2^n for random_basis)",
    )
    p.add_argument(
        "--input-kind",
        choices=("all_zero", "random_basis", "random_stabilizer"),
        default="random_basis",
    )
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser(
        "solve",
        help="solve a DIMACS file with the built-in solver (exit 10 sat / 20 unsat)",
    )
    p.add_argument("file", help="DIMACS CNF path, '-' for stdin")
    p.set_defaults(func=_cmd_solve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        CircuitParseError,
        ValueError,
        OSError,
        SolverError,
        EncodingIntegrityError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
