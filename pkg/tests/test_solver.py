"""SAT backends: the built-in conflict-driven solver against brute force on
random formulas, model enumeration, structured unsatisfiable families, and
the external-process adapter."""

import sys

import numpy as np
import pytest

from cliffsat.encoder import CnfFormula
from cliffsat.solver import (
    CdclSolver,
    ProcessSolver,
    SolverError,
    SolverInterface,
    SolverResult,
    enumerate_models,
)

from helpers import brute_force_models, brute_force_sat


def random_cnf(rng: np.random.Generator, num_vars: int, num_clauses: int) -> list[list[int]]:
    clauses = []
    for _ in range(num_clauses):
        width = int(rng.integers(1, 4))
        vars_ = rng.choice(num_vars, size=min(width, num_vars), replace=False) + 1
        signs = rng.integers(0, 2, size=len(vars_)) * 2 - 1
        clauses.append([int(v * s) for v, s in zip(vars_, signs)])
    return clauses


def check_model_satisfies(solver: SolverInterface, clauses: list[list[int]]) -> None:
    for clause in clauses:
        assert any(
            solver.model(abs(lit)) == (1 if lit > 0 else 0) for lit in clause
        ), clause


def pigeonhole(pigeons: int, holes: int) -> list[list[int]]:
    """p_{i,j} ("pigeon i sits in hole j"): every pigeon somewhere, no two
    share a hole. Unsatisfiable whenever pigeons > holes."""
    var = lambda i, j: i * holes + j + 1
    clauses = [[var(i, j) for j in range(holes)] for i in range(pigeons)]
    for j in range(holes):
        for i in range(pigeons):
            for k in range(i + 1, pigeons):
                clauses.append([-var(i, j), -var(k, j)])
    return clauses


# ---------------------------------------------------------------------------
# Built-in solver
# ---------------------------------------------------------------------------

class TestCdclSolver:
    def test_agrees_with_brute_force_on_random_formulas(self):
        rng = np.random.default_rng(0)
        disagreements = 0
        for trial in range(300):
            num_vars = int(rng.integers(1, 9))
            clauses = random_cnf(rng, num_vars, int(rng.integers(1, 26)))
            solver = CdclSolver()
            solver.reserve_vars(num_vars)
            for c in clauses:
                solver.add_clause(c)
            verdict = solver.solve()
            expected = brute_force_sat(num_vars, clauses)
            if (verdict is SolverResult.SAT) != expected:
                disagreements += 1
            elif verdict is SolverResult.SAT:
                check_model_satisfies(solver, clauses)
        assert disagreements == 0

    def test_empty_formula_is_sat(self):
        solver = CdclSolver()
        assert solver.solve() is SolverResult.SAT

    def test_reserved_vars_get_values(self):
        solver = CdclSolver()
        solver.reserve_vars(3)
        assert solver.solve() is SolverResult.SAT
        for v in (1, 2, 3):
            assert solver.model(v) in (0, 1)

    def test_unit_clauses(self):
        solver = CdclSolver()
        solver.add_clause([2])
        solver.add_clause([-1])
        assert solver.solve() is SolverResult.SAT
        assert solver.model(1) == 0 and solver.model(2) == 1

    def test_contradictory_units_unsat(self):
        solver = CdclSolver()
        solver.add_clause([1])
        solver.add_clause([-1])
        assert solver.solve() is SolverResult.UNSAT

    def test_empty_clause_unsat(self):
        solver = CdclSolver()
        solver.add_clause([])
        assert solver.solve() is SolverResult.UNSAT

    def test_tautology_dropped(self):
        solver = CdclSolver()
        solver.add_clause([1, -1])
        solver.add_clause([2])
        assert solver.solve() is SolverResult.SAT
        assert solver.model(2) == 1

    def test_duplicate_literals_normalized(self):
        solver = CdclSolver()
        solver.add_clause([3, 3, 3])
        assert solver.solve() is SolverResult.SAT
        assert solver.model(3) == 1

    def test_zero_literal_rejected(self):
        with pytest.raises(ValueError):
            CdclSolver().add_clause([1, 0])

    def test_model_unavailable_before_solve(self):
        solver = CdclSolver()
        solver.add_clause([1])
        with pytest.raises(SolverError):
            solver.model(1)

    def test_model_unavailable_after_unsat(self):
        solver = CdclSolver()
        solver.add_clause([1])
        solver.add_clause([-1])
        solver.solve()
        with pytest.raises(SolverError):
            solver.model(1)

    def test_model_var_out_of_range(self):
        solver = CdclSolver()
        solver.add_clause([1])
        solver.solve()
        with pytest.raises(IndexError):
            solver.model(2)

    def test_conflicts_reported(self):
        solver = CdclSolver()
        assert solver.conflicts is None
        for clause in pigeonhole(3, 2):
            solver.add_clause(clause)
        assert solver.solve() is SolverResult.UNSAT
        assert solver.conflicts >= 1

    def test_add_formula_plus_extra_clauses(self):
        formula = CnfFormula.from_clauses(2, [[1, 2]])
        solver = CdclSolver()
        solver.add_formula(formula)
        solver.add_clause([-1])
        assert solver.solve() is SolverResult.SAT
        assert solver.model(1) == 0 and solver.model(2) == 1
        solver.add_clause([-2])
        assert solver.solve() is SolverResult.UNSAT

    @pytest.mark.parametrize("pigeons,holes", [(4, 3), (6, 5)])
    def test_pigeonhole_unsat(self, pigeons, holes):
        solver = CdclSolver()
        for clause in pigeonhole(pigeons, holes):
            solver.add_clause(clause)
        assert solver.solve() is SolverResult.UNSAT

    def test_pigeonhole_sat_when_holes_suffice(self):
        clauses = pigeonhole(4, 4)
        solver = CdclSolver()
        for clause in clauses:
            solver.add_clause(clause)
        assert solver.solve() is SolverResult.SAT
        check_model_satisfies(solver, clauses)


# ---------------------------------------------------------------------------
# Model enumeration
# ---------------------------------------------------------------------------

class TestEnumerateModels:
    def test_agrees_with_brute_force(self):
        rng = np.random.default_rng(1)
        for trial in range(40):
            num_vars = int(rng.integers(1, 7))
            clauses = random_cnf(rng, num_vars, int(rng.integers(1, 15)))
            formula = CnfFormula.from_clauses(num_vars, clauses)
            got = sorted(enumerate_models(formula))
            want = sorted(brute_force_models(num_vars, clauses))
            assert got == want, (num_vars, clauses)

    def test_unconstrained_vars_enumerated(self):
        formula = CnfFormula.from_clauses(2, [[1]])
        assert sorted(enumerate_models(formula)) == [(1, 0), (1, 1)]

    def test_unsat_formula_gives_no_models(self):
        formula = CnfFormula.from_clauses(1, [[1], [-1]])
        assert enumerate_models(formula) == []

    def test_limit_enforced(self):
        formula = CnfFormula.from_clauses(4, [[1, 2, 3, 4]])
        with pytest.raises(SolverError):
            enumerate_models(formula, limit=3)


# ---------------------------------------------------------------------------
# External process adapter
# ---------------------------------------------------------------------------

SELF_SOLVER = [sys.executable, "-m", "cliffsat.cli", "solve"]


class TestProcessSolver:
    def test_sat_with_model(self):
        solver = ProcessSolver(SELF_SOLVER)
        solver.reserve_vars(3)
        solver.add_clause([1, 2])
        solver.add_clause([-1])
        solver.add_clause([3])
        assert solver.solve() is SolverResult.SAT
        assert solver.model(1) == 0
        assert solver.model(2) == 1
        assert solver.model(3) == 1

    def test_unsat(self):
        solver = ProcessSolver(SELF_SOLVER)
        for clause in pigeonhole(3, 2):
            solver.add_clause(clause)
        assert solver.solve() is SolverResult.UNSAT
        with pytest.raises(SolverError):
            solver.model(1)

    def test_command_string_form(self):
        solver = ProcessSolver(" ".join(SELF_SOLVER))
        solver.add_clause([1])
        assert solver.solve() is SolverResult.SAT

    def test_missing_binary(self):
        solver = ProcessSolver(["/no/such/solver/binary"])
        solver.add_clause([1])
        with pytest.raises(SolverError, match="failed to run"):
            solver.solve()

    def test_no_verdict(self):
        solver = ProcessSolver(["true"])
        solver.add_clause([1])
        with pytest.raises(SolverError, match="no verdict"):
            solver.solve()

    def test_empty_command_rejected(self):
        with pytest.raises(ValueError):
            ProcessSolver("")
