import numpy as np
import pytest

import pylure


def test_p1_solution_satisfies_lure_equations():
    prob = pylure.gen_p1(10, 3, seed=0)
    sol = pylure.solve(prob)
    assert sol.relative_residual <= 1e-12
    A, B, C, Q, R = prob.A, prob.B, prob.C, prob.Q, prob.R
    X, K, L = sol.X, sol.K, sol.L
    scale = np.linalg.norm(np.block([[A.T @ X + X @ A + Q, X @ B + C], [(X @ B + C).T, R]]))
    assert np.linalg.norm(A.T @ X + X @ A + Q - K.T @ K) <= 1e-10 * scale
    assert np.linalg.norm(X @ B + C - K.T @ L) <= 1e-10 * scale
    assert np.allclose(X, X.T)


def test_scalar_riccati_root():
    # a=-1, b=1, c=0, q=1, r=1: x^2 + 2x - 1 = 0.
    one = np.ones((1, 1))
    prob = pylure.LureProblem(-one, one, 0 * one, one, one)
    sol = pylure.solve(prob, gamma=1.0)
    assert sol.X[0, 0] == pytest.approx(-1 + np.sqrt(2), abs=1e-12)
    assert sol.termination == "converged"


def test_constructed_problem_recovered():
    cp = pylure.gen_constructed(5, 2, 2, seed=3)
    sol = pylure.solve(cp.problem)
    assert pylure.forward_error(sol.X, cp.X) <= 1e-8


def test_regularized_baselines_are_less_accurate():
    prob = pylure.gen_p1(10, 3, seed=0)
    exact = pylure.solve(prob).relative_residual
    assert pylure.solve_rs(prob, 1e-6).relative_residual >= 1e3 * exact
    assert pylure.solve_rn(prob, 1e-8).relative_residual <= 1e-7
    with pytest.raises(pylure.InvalidArgument):
        pylure.solve_rs(prob, 0.0)


def test_gamma_search_and_file_round_trip():
    prob = pylure.gen_p1(6, 2, seed=1)
    res = pylure.choose_gamma(prob)
    assert len(res.evaluations) == 6
    assert res.f_value == min(f for _, f in res.evaluations)
    back = pylure.parse_problem(pylure.format_problem(prob))
    assert np.array_equal(back.A, prob.A)
    with pytest.raises(pylure.ParseError):
        pylure.parse_problem("LURE 2\n")
    with pytest.raises(pylure.LureError):
        pylure.parse_problem("LURE 2\n")
