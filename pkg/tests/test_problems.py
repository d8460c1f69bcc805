import json
import math

import numpy as np
import pytest

from proxbounds import (
    InitialCondition,
    eval_F,
    initial_from_reference,
    make_box_constrained_ls,
    make_quadratic_l1,
    problem_from_json,
    problem_to_json,
    solve_reference,
)
from proxbounds.instances import random_box, random_lasso


def test_soft_threshold_prox():
    p = make_quadratic_l1(np.eye(1), np.zeros(1), 1.0)
    assert p.prox(np.array([3.0]), 1.0)[0] == pytest.approx(2.0)
    assert p.prox(np.array([-3.0]), 1.0)[0] == pytest.approx(-2.0)
    assert p.prox(np.array([0.5]), 1.0)[0] == 0.0


def test_zero_weight_prox_is_identity():
    p = make_quadratic_l1(np.eye(2), np.zeros(2), 0.0)
    v = np.array([1.3, -2.2])
    np.testing.assert_allclose(p.prox(v, 2.0), v)


def test_reference_matches_long_run_oracle():
    p = make_quadratic_l1(np.diag([0.5, 2.0]), np.ones(2), 0.3)
    assert p.L == pytest.approx(2.0)
    # independent oracle: fixed-point iteration written out by hand
    x = np.zeros(2)
    for _ in range(10**5):
        x = p.prox(x - p.grad_f(x) / p.L, p.L)
    x_hat, _ = solve_reference(p)
    np.testing.assert_allclose(x_hat, x, atol=1e-10)
    step = p.prox(x_hat - p.grad_f(x_hat) / p.L, p.L)
    assert np.linalg.norm(step - x_hat) <= 1e-12


def test_quadratic_rejects_bad_inputs():
    z = np.zeros(2)
    with pytest.raises(ValueError):
        make_quadratic_l1(np.array([[0.0, 1.0], [0.0, 0.0]]), z, 1.0)
    with pytest.raises(ValueError):
        make_quadratic_l1(np.diag([1.0, -1.0]), z, 1.0)
    with pytest.raises(ValueError):
        make_quadratic_l1(np.eye(2), z, -0.1)
    with pytest.raises(ValueError):
        make_quadratic_l1(np.eye(2), np.zeros(3), 1.0)


def test_box_prox_clamps():
    p = make_box_constrained_ls(np.array([[1.0]]), np.array([5.0]),
                                np.array([0.0]), np.array([1.0]))
    assert p.prox(np.array([3.0]), p.L)[0] == 1.0
    assert p.prox(np.array([-2.0]), p.L)[0] == 0.0


def test_unbounded_box_prox_is_identity():
    p = make_box_constrained_ls(np.array([[1.0]]), np.array([5.0]),
                                np.array([-np.inf]), np.array([np.inf]))
    assert p.prox(np.array([42.0]), p.L)[0] == 42.0


def test_box_identity_design_solution_is_projection():
    p = make_box_constrained_ls(np.eye(2), np.array([2.0, -2.0]),
                                -np.ones(2), np.ones(2))
    x_hat, _ = solve_reference(p)
    np.testing.assert_allclose(x_hat, [1.0, -1.0], atol=1e-10)


def test_box_rejects_crossed_bounds():
    with pytest.raises(ValueError):
        make_box_constrained_ls(np.eye(2), np.zeros(2),
                                np.array([0.0, 1.0]), np.array([1.0, 0.5]))


def test_eval_F_quadratic_l1():
    p = make_quadratic_l1(np.eye(1), np.zeros(1), 1.0)
    assert eval_F(p, np.array([2.0])) == pytest.approx(4.0)


def test_eval_F_infeasible_box_is_inf():
    p = make_box_constrained_ls(np.array([[1.0]]), np.array([0.0]),
                                np.array([0.0]), np.array([1.0]))
    assert eval_F(p, np.array([2.0])) == math.inf


def test_eval_F_at_reference_minimizer(ref_lasso):
    p, _ = ref_lasso
    assert eval_F(p, p.x_star) == pytest.approx(p.F_star, abs=1e-12)


def test_eval_F_dimension_mismatch():
    p = make_quadratic_l1(np.eye(2), np.zeros(2), 0.5)
    with pytest.raises(ValueError):
        eval_F(p, np.zeros(3))


def test_reference_smooth_quadratic():
    p = make_quadratic_l1(np.eye(1), np.zeros(1), 0.0)
    x_hat, F_hat = solve_reference(p)
    assert x_hat[0] == pytest.approx(0.0, abs=1e-12)
    assert F_hat == pytest.approx(0.0, abs=1e-12)


def test_reference_1d_shrinkage_closed_form():
    # minimizer of x^2/2 - 2x + |x| is the threshold of b at lam
    p = make_quadratic_l1(np.eye(1), np.array([2.0]), 1.0)
    x_hat, F_hat = solve_reference(p)
    assert x_hat[0] == pytest.approx(1.0, abs=1e-11)
    assert F_hat == pytest.approx(-0.5, abs=1e-11)


def test_reference_random_lasso_is_fixed_point():
    p, _ = random_lasso(5, 20)
    tol = 1e-12
    x_hat, _ = solve_reference(p, tol=tol)
    step = p.prox(x_hat - p.grad_f(x_hat) / p.L, p.L)
    assert np.linalg.norm(x_hat - step) <= tol


def test_reference_iteration_cap():
    p = make_quadratic_l1(np.diag([1.0, 1e-3]), np.ones(2), 0.0)
    with pytest.raises(RuntimeError):
        solve_reference(p, tol=1e-14, max_iter=3)


@pytest.mark.parametrize("maker,seed", [(random_lasso, 11), (random_box, 12)])
def test_prox_nonexpansive_sampled(maker, seed):
    p, _ = maker(seed, 12)
    rng = np.random.default_rng(seed)
    for _ in range(50):
        v1 = rng.normal(size=p.dim)
        v2 = rng.normal(size=p.dim)
        lhs = np.linalg.norm(p.prox(v1, p.L) - p.prox(v2, p.L))
        assert lhs <= np.linalg.norm(v1 - v2) + 1e-12


@pytest.mark.parametrize("maker,seed", [(random_lasso, 21), (random_box, 22)])
def test_gradient_lipschitz_sampled(maker, seed):
    p, _ = maker(seed, 15)
    rng = np.random.default_rng(seed)
    for _ in range(50):
        x = rng.normal(size=p.dim)
        y = rng.normal(size=p.dim)
        lhs = np.linalg.norm(p.grad_f(x) - p.grad_f(y))
        assert lhs <= p.L * np.linalg.norm(x - y) * (1 + 1e-12)


def test_json_round_trip_lasso():
    p, _ = random_lasso(31, 6)
    solve_reference(p)
    doc = json.loads(json.dumps(problem_to_json(p)))
    q = problem_from_json(doc)
    assert q.L == pytest.approx(p.L, rel=1e-12)
    x = np.linspace(-1, 1, 6)
    np.testing.assert_allclose(q.grad_f(x), p.grad_f(x), rtol=1e-12)
    np.testing.assert_allclose(q.prox(x, q.L), p.prox(x, p.L), rtol=1e-12)
    np.testing.assert_allclose(q.x_star, p.x_star)
    assert q.F_star == p.F_star


def test_json_round_trip_box_with_infinite_bounds():
    p = make_box_constrained_ls(np.array([[2.0, 0.0], [0.0, 1.0]]), np.ones(2),
                                np.array([-np.inf, 0.0]), np.array([1.0, np.inf]))
    doc = json.loads(json.dumps(problem_to_json(p)))
    assert doc["lo"][0] is None and doc["hi"][1] is None
    q = problem_from_json(doc)
    v = np.array([-5.0, 7.0])
    np.testing.assert_allclose(q.prox(v, q.L), p.prox(v, p.L))


def test_json_rejects_stale_lipschitz_constant():
    p, _ = random_lasso(32, 4)
    doc = problem_to_json(p)
    doc["L"] = 2.0 * doc["L"]
    with pytest.raises(ValueError):
        problem_from_json(doc)


def test_custom_problem_not_serializable():
    from proxbounds import CompositeProblem

    p = CompositeProblem(dim=1, f=lambda x: 0.0, grad_f=lambda x: x * 0,
                         L=1.0, phi=lambda x: 0.0, prox=lambda v, c: v)
    with pytest.raises(ValueError):
        problem_to_json(p)


def test_initial_condition_requires_positive_radius():
    with pytest.raises(ValueError):
        InitialCondition(x0=np.zeros(2), R=0.0)


def test_initial_from_reference_distance(ref_lasso):
    p, x0 = ref_lasso
    init = initial_from_reference(p, x0)
    assert init.R == pytest.approx(np.linalg.norm(x0 - p.x_star))


def test_initial_from_reference_requires_reference():
    p, x0 = random_lasso(33, 4)
    with pytest.raises(ValueError):
        initial_from_reference(p, x0)
