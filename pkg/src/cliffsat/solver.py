"""SAT solver access: a built-in compiled CDCL backend, an adapter for
external solver executables, and exhaustive model enumeration for small
formulas.

All backends implement SolverInterface: add clauses (DIMACS literal
convention), call solve() for sat/unsat, then read model bits per variable.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
from abc import ABC, abstractmethod
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np

from .encoder import CnfFormula


class SolverResult(Enum):
    SAT = "sat"
    UNSAT = "unsat"


class SolverError(RuntimeError):
    """Solver backend failed or produced unusable output."""


class SolverInterface(ABC):
    """Minimal assumption-free SAT solving protocol."""

    @abstractmethod
    def add_clause(self, clause: Sequence[int]) -> None:
        """Add one clause of nonzero DIMACS literals."""

    def add_formula(self, formula: CnfFormula) -> None:
        self.reserve_vars(formula.num_vars)
        for clause in formula.iter_clauses():
            self.add_clause(clause)

    def reserve_vars(self, num_vars: int) -> None:
        """Declare variables up to num_vars even if no clause mentions them."""

    @abstractmethod
    def solve(self) -> SolverResult:
        """Decide the conjunction of everything added so far."""

    @abstractmethod
    def model(self, var: int) -> int:
        """Value (0/1) of a variable in the satisfying assignment found last."""

    @property
    def conflicts(self) -> int | None:
        """Conflict count of the last solve, if the backend reports one."""
        return None


def _check_clause(clause: Sequence[int]) -> list[int]:
    out = [int(lit) for lit in clause]
    if any(lit == 0 for lit in out):
        raise ValueError("clause literals must be nonzero")
    return out


def _track_vars(current: int, clause: list[int]) -> int:
    return max(current, max(abs(lit) for lit in clause)) if clause else current


class CdclSolver(SolverInterface):
    """Built-in conflict-driven solver (compiled with numba on first use)."""

    def __init__(self):
        self._formulas: list[CnfFormula] = []
        self._extra: list[list[int]] = []
        self._num_vars = 0
        self._model: np.ndarray | None = None
        self._conflicts: int | None = None

    def add_clause(self, clause: Sequence[int]) -> None:
        clause = _check_clause(clause)
        lits = sorted(set(clause))
        if any(-lit in lits for lit in lits):
            return  # tautology, no constraint
        self._extra.append(lits)
        self._num_vars = _track_vars(self._num_vars, lits)

    def add_formula(self, formula: CnfFormula) -> None:
        self._formulas.append(formula)
        self._num_vars = max(self._num_vars, formula.num_vars)

    def reserve_vars(self, num_vars: int) -> None:
        self._num_vars = max(self._num_vars, num_vars)

    def solve(self) -> SolverResult:
        from ._satcore import solve_cnf

        lit_chunks = [f.lits for f in self._formulas]
        start_offsets = []
        offset = 0
        for f in self._formulas:
            start_offsets.append(f.starts[1:] + offset)
            offset += len(f.lits)
        if self._extra:
            extra_lits = np.fromiter(
                (lit for c in self._extra for lit in c),
                dtype=np.int32,
                count=sum(len(c) for c in self._extra),
            )
            lit_chunks.append(extra_lits)
            lengths = np.fromiter((len(c) for c in self._extra), dtype=np.int64, count=len(self._extra))
            start_offsets.append(np.cumsum(lengths) + offset)
        lits = np.concatenate(lit_chunks) if lit_chunks else np.empty(0, np.int32)
        starts = np.concatenate([np.zeros(1, np.int64)] + start_offsets)
        codes = np.where(lits > 0, 2 * (lits - 1), -2 * lits - 1).astype(np.int32)
        status, model, conflicts = solve_cnf(self._num_vars, codes, starts)
        self._conflicts = int(conflicts)
        if status == 1:
            self._model = model
            return SolverResult.SAT
        self._model = None
        return SolverResult.UNSAT

    def model(self, var: int) -> int:
        if self._model is None:
            raise SolverError("no model available; last solve was unsat or never ran")
        if not 1 <= var <= self._num_vars:
            raise IndexError(f"variable {var} out of range")
        return int(self._model[var - 1])

    @property
    def conflicts(self) -> int | None:
        return self._conflicts


class ProcessSolver(SolverInterface):
    """Adapter running an external solver executable on a DIMACS file.

    The command gets the file path as its last argument and must answer with
    an "s SATISFIABLE"/"s UNSATISFIABLE" line (exit codes 10/20 also count)
    plus "v" model lines when satisfiable, the usual solver-competition form.
    """

    def __init__(self, command: str | Sequence[str]):
        self._argv = shlex.split(command) if isinstance(command, str) else [str(c) for c in command]
        if not self._argv:
            raise ValueError("empty solver command")
        self._formulas: list[CnfFormula] = []
        self._extra: list[list[int]] = []
        self._num_vars = 0
        self._model: dict[int, int] = {}
        self._has_model = False

    def add_clause(self, clause: Sequence[int]) -> None:
        clause = _check_clause(clause)
        self._extra.append(clause)
        self._num_vars = _track_vars(self._num_vars, clause)

    def reserve_vars(self, num_vars: int) -> None:
        self._num_vars = max(self._num_vars, num_vars)

    def add_formula(self, formula: CnfFormula) -> None:
        self._formulas.append(formula)
        self._num_vars = max(self._num_vars, formula.num_vars)

    def _write_dimacs(self, path: Path) -> None:
        num_clauses = sum(f.num_clauses for f in self._formulas) + len(self._extra)
        with open(path, "w") as fh:
            fh.write(f"p cnf {self._num_vars} {num_clauses}\n")
            for f in self._formulas:
                lits, starts = f.lits, f.starts
                for i in range(f.num_clauses):
                    row = lits[starts[i] : starts[i + 1]]
                    fh.write(" ".join(map(str, row)) + " 0\n")
            for clause in self._extra:
                fh.write(" ".join(map(str, clause)) + " 0\n")

    def solve(self) -> SolverResult:
        self._model = {}
        self._has_model = False
        with tempfile.TemporaryDirectory(prefix="cnf") as tmp:
            path = Path(tmp) / "problem.cnf"
            self._write_dimacs(path)
            try:
                proc = subprocess.run(
                    self._argv + [str(path)], capture_output=True, text=True, check=False
                )
            except OSError as exc:
                raise SolverError(f"failed to run {self._argv[0]!r}: {exc}") from exc
        status = None
        for line in proc.stdout.splitlines():
            if line.startswith("s "):
                token = line[2:].strip()
                if token == "SATISFIABLE":
                    status = SolverResult.SAT
                elif token == "UNSATISFIABLE":
                    status = SolverResult.UNSAT
            elif line.startswith("v "):
                for tok in line[2:].split():
                    lit = int(tok)
                    if lit != 0:
                        self._model[abs(lit)] = int(lit > 0)
        if status is None:
            if proc.returncode == 10:
                status = SolverResult.SAT
            elif proc.returncode == 20:
                status = SolverResult.UNSAT
            else:
                raise SolverError(
                    f"solver {self._argv[0]!r} gave no verdict "
                    f"(exit {proc.returncode}): {proc.stderr.strip()[:200]}"
                )
        if status is SolverResult.SAT:
            if not self._model:
                raise SolverError(f"solver {self._argv[0]!r} reported sat without model lines")
            self._has_model = True
        return status

    def model(self, var: int) -> int:
        if not self._has_model:
            raise SolverError("no model available; last solve was unsat or never ran")
        return self._model.get(var, 0)


def enumerate_models(formula: CnfFormula, limit: int = 1 << 20) -> list[tuple[int, ...]]:
    """All satisfying assignments of a small formula, as 0/1 tuples indexed by
    variable - 1, in no particular order. Each model found is blocked by a
    clause and the solver rerun."""
    blocked: list[list[int]] = []
    models: list[tuple[int, ...]] = []
    while len(models) <= limit:
        solver = CdclSolver()
        solver.add_formula(formula)
        for clause in blocked:
            solver.add_clause(clause)
        if solver.solve() is SolverResult.UNSAT:
            return models
        bits = tuple(solver.model(v) for v in range(1, formula.num_vars + 1))
        models.append(bits)
        blocked.append([(-v if bits[v - 1] else v) for v in range(1, formula.num_vars + 1)])
    raise SolverError(f"more than {limit} models")
