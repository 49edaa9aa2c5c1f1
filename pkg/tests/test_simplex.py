"""Dense LP solver against a brute-force vertex enumeration oracle."""

import numpy as np
import pytest

from scencert.simplex import (
    LinearProgram,
    LPInfeasibleError,
    LPUnboundedError,
    lp_solve,
)

from helpers import random_feasible_lp, vertex_optimum


def test_two_variable_toy():
    # max x1 + x2 s.t. x1 + x2 = 1, x >= 0
    lp = LinearProgram(
        np.array([1.0, 1.0]),
        np.zeros((0, 2)),
        np.zeros(0),
        np.array([[1.0, 1.0]]),
        np.array([1.0]),
    )
    solution = lp_solve(lp)
    assert solution.objective == pytest.approx(1.0, abs=1e-12)
    assert solution.x.sum() == pytest.approx(1.0, abs=1e-12)


def test_simple_inequality_program():
    # max 2 x1 + x2 s.t. x1 + x2 = 1, x1 >= 0.25 -> x = (0.75... no: x1 free up)
    lp = LinearProgram(
        np.array([2.0, 1.0]),
        np.array([[0.0, 1.0]]),
        np.array([0.25]),
        np.array([[1.0, 1.0]]),
        np.array([1.0]),
    )
    solution = lp_solve(lp)
    assert solution.objective == pytest.approx(2 * 0.75 + 0.25, abs=1e-10)
    assert solution.x == pytest.approx(np.array([0.75, 0.25]), abs=1e-10)


def test_infeasible_detected():
    # x1 >= 2 conflicts with x1 + x2 = 1, x >= 0
    lp = LinearProgram(
        np.array([1.0, 0.0]),
        np.array([[1.0, 0.0]]),
        np.array([2.0]),
        np.array([[1.0, 1.0]]),
        np.array([1.0]),
    )
    with pytest.raises(LPInfeasibleError):
        lp_solve(lp)


def test_unbounded_detected():
    lp = LinearProgram(
        np.array([1.0]),
        np.array([[1.0]]),
        np.array([0.5]),
        np.zeros((0, 1)),
        np.zeros(0),
    )
    with pytest.raises(LPUnboundedError):
        lp_solve(lp)


def test_unconstrained_zero_objective():
    lp = LinearProgram(
        np.array([-1.0, -2.0]),
        np.zeros((0, 2)),
        np.zeros(0),
        np.zeros((0, 2)),
        np.zeros(0),
    )
    solution = lp_solve(lp)
    assert solution.objective == 0.0


def test_degenerate_vertex_terminates():
    # multiple rows tie at the same vertex; Bland fallback must finish
    lp = LinearProgram(
        np.array([1.0, 1.0, 0.0]),
        np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        np.array([0.0, 0.0, 0.0]),
        np.array([[1.0, 1.0, 1.0]]),
        np.array([1.0]),
    )
    solution = lp_solve(lp)
    assert solution.objective == pytest.approx(1.0, abs=1e-10)


def test_validation_errors():
    with pytest.raises(ValueError):
        LinearProgram(np.zeros(0), np.zeros((0, 0)), np.zeros(0),
                      np.zeros((0, 0)), np.zeros(0))
    with pytest.raises(ValueError):
        LinearProgram(np.array([1.0]), np.array([[1.0, 2.0]]), np.array([1.0]),
                      np.zeros((0, 1)), np.zeros(0))
    with pytest.raises(ValueError):
        LinearProgram(np.array([np.inf]), np.zeros((0, 1)), np.zeros(0),
                      np.zeros((0, 1)), np.zeros(0))


def test_against_vertex_enumeration_oracle():
    rng = np.random.default_rng(40)
    solved = 0
    while solved < 25:
        n_vars = int(rng.integers(2, 9))
        lp = random_feasible_lp(rng, n_vars)
        expected = vertex_optimum(lp)
        assert expected is not None  # construction guarantees feasibility
        solution = lp_solve(lp)
        assert solution.objective == pytest.approx(expected, abs=1e-7)
        # returned point is feasible for the original program
        assert np.all(lp.a_ge @ solution.x >= lp.b_ge - 1e-8)
        assert lp.a_eq @ solution.x == pytest.approx(lp.b_eq, abs=1e-8)
        assert np.all(solution.x >= -1e-12)
        solved += 1
