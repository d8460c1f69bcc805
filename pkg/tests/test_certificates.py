import math

import numpy as np
import pytest

from proxbounds import (
    CostCertificate,
    analytic_bounds,
    anchor_matrix,
    check_feasibility,
    consecutive_matrix,
    cost_certificate,
    custom_t_sequence,
    dual_bound_cost,
    dual_bound_mapping,
    dual_matrix,
    dual_matrix_mapping,
    fista_t_sequence,
    linear_t_sequence,
    mapping_certificate,
    maximize_quad,
    min_eigenvalue,
    opg_t_sequence,
    quad_objective,
    step_coefficients,
)
from proxbounds.schedules import StepSchedule

T_FAMILIES = [
    ("fista", fista_t_sequence),
    ("linear2", lambda n: linear_t_sequence(n, 2)),
    ("linear4", lambda n: linear_t_sequence(n, 4)),
    ("opg", opg_t_sequence),
]


def _outer_oracle_consecutive(h, i):
    """Independent dense accumulation of the consecutive-pair form."""
    n = h.horizon
    u = np.eye(n)
    A = 0.5 * np.outer(u[i], u[i])
    A -= 0.5 * np.outer(u[i - 1], u[i]) + 0.5 * np.outer(u[i], u[i - 1])
    for k in range(i):
        A += 0.5 * h.coeffs[i, k] * (np.outer(u[i], u[k]) + np.outer(u[k], u[i]))
    return A


def _outer_oracle_anchor(h, i):
    n = h.horizon
    u = np.eye(n)
    D = 0.5 * np.outer(u[i], u[i])
    for j in range(1, i + 1):
        for k in range(j):
            D += 0.5 * h.coeffs[j, k] * (np.outer(u[i], u[k]) + np.outer(u[k], u[i]))
    return D


def test_consecutive_matrix_cancels_for_unit_first_row():
    coeffs = np.zeros((2, 2))
    coeffs[1, 0] = 1.0
    h = StepSchedule(horizon=2, coeffs=coeffs)
    np.testing.assert_allclose(consecutive_matrix(h, 1), np.diag([0.0, 0.5]))


def test_consecutive_matrix_trace_is_half():
    h = step_coefficients(opg_t_sequence(6))
    for i in range(1, 6):
        assert np.trace(consecutive_matrix(h, i)) == pytest.approx(0.5)


def test_matrices_match_outer_product_oracle():
    h = step_coefficients(fista_t_sequence(4))
    for i in range(1, 4):
        np.testing.assert_allclose(consecutive_matrix(h, i),
                                   _outer_oracle_consecutive(h, i), atol=1e-15)
    for i in range(4):
        np.testing.assert_allclose(anchor_matrix(h, i),
                                   _outer_oracle_anchor(h, i), atol=1e-15)


def test_anchor_matrix_first_index_is_corner():
    h = step_coefficients(fista_t_sequence(3))
    np.testing.assert_allclose(anchor_matrix(h, 0), np.diag([0.5, 0.0, 0.0]))


def test_matrix_index_bounds():
    h = step_coefficients(fista_t_sequence(3))
    with pytest.raises(ValueError):
        consecutive_matrix(h, 0)
    with pytest.raises(ValueError):
        consecutive_matrix(h, 3)
    with pytest.raises(ValueError):
        anchor_matrix(h, 3)


def test_dual_matrix_zero_multipliers():
    h = step_coefficients(fista_t_sequence(4))
    S = dual_matrix(h, np.zeros(3), np.zeros(4))
    assert np.abs(S).max() == 0.0


def test_dual_matrix_length_checks():
    h = step_coefficients(fista_t_sequence(4))
    with pytest.raises(ValueError):
        dual_matrix(h, np.zeros(2), np.zeros(4))
    with pytest.raises(ValueError):
        dual_matrix_mapping(h, np.zeros(3), np.zeros(4), 0.0, np.zeros(4))


def test_mapping_dual_matrix_padding_row_is_zero():
    h = step_coefficients(fista_t_sequence(5))
    lam = np.linspace(0.1, 0.4, 4)
    tau = np.linspace(0.2, 0.7, 5)
    S = dual_matrix_mapping(h, lam, tau, 0.0, np.zeros(6))
    assert np.abs(S[5, :]).max() == 0.0
    assert np.abs(S[:, 5]).max() == 0.0


def test_mapping_dual_matrix_pure_beta_is_negative_diag():
    h = step_coefficients(fista_t_sequence(3))
    beta = np.array([0.25, 0.25, 0.25, 0.25])
    S = dual_matrix_mapping(h, np.zeros(2), np.zeros(3), 0.0, beta)
    np.testing.assert_allclose(S, -np.diag(beta))


def test_cost_certificate_two_step_values():
    c = cost_certificate(fista_t_sequence(2))
    golden = 0.3819660112501051
    assert c.lam[0] == pytest.approx(golden, abs=1e-9)
    assert c.tau[0] == pytest.approx(golden, abs=1e-9)
    assert c.tau[1] == pytest.approx(0.6180339887498949, abs=1e-9)
    assert c.gamma == pytest.approx(golden, abs=1e-9)
    assert c.membership_residual() <= 1e-15


def test_cost_certificate_single_step():
    c = cost_certificate(fista_t_sequence(1))
    assert c.lam.size == 0
    assert c.tau[0] == pytest.approx(1.0)
    assert c.gamma == pytest.approx(1.0)
    assert dual_bound_cost(c, 1.0, 1.0) == pytest.approx(0.5)


def test_cost_certificate_telescoping():
    c = cost_certificate(linear_t_sequence(5, 4))
    assert c.membership_residual() <= 1e-15


def test_cost_dual_block_entries_two_step():
    t = fista_t_sequence(2)
    c = cost_certificate(t)
    S = c.bordered[:2, :2]
    tv, Ts = t.values, t.sums
    T_last = Ts[-1]
    np.testing.assert_allclose(np.diag(S), Ts / (2 * T_last), atol=1e-14)
    assert S[1, 0] == pytest.approx(tv[1] * tv[0] / (2 * T_last), abs=1e-14)


def test_mapping_certificate_two_step_values():
    m = mapping_certificate(fista_t_sequence(2))
    assert m.tau[0] == pytest.approx(0.7639320225002102, abs=1e-9)
    assert m.eta == pytest.approx(2.0, abs=1e-12)
    np.testing.assert_allclose(m.beta, [0.0, 0.0, 1.0], atol=1e-15)
    assert m.gamma == pytest.approx(m.tau[0])
    assert m.membership_residual() <= 1e-15


def test_mapping_certificate_decreasing_tail():
    m = mapping_certificate(opg_t_sequence(4))
    assert np.all(m.beta >= -1e-15)
    assert m.beta.sum() == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("label,maker", T_FAMILIES)
def test_mapping_bound_formula(label, maker):
    t = maker(7)
    m = mapping_certificate(t)
    denom = float((t.sums - t.values**2).sum() + t.sums[-1])
    assert m.gamma == pytest.approx(2.0 / denom, rel=1e-12)
    assert dual_bound_mapping(m, 2.0, 3.0) == pytest.approx(6.0 / math.sqrt(denom), rel=1e-12)


@pytest.mark.parametrize("label,maker", T_FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 5, 10, 25])
def test_bordered_closed_forms(label, maker, n):
    t = maker(n)
    tv, Ts = t.values, t.sums
    c = cost_certificate(t)
    tt = np.append(tv, 1.0)
    TT = np.append(Ts, 1.0)
    closed = (np.diag(TT - tt**2) + np.outer(tt, tt)) / (2.0 * Ts[-1])
    scale = max(1.0, np.abs(closed).max())
    assert np.abs(c.bordered - closed).max() <= 1e-12 * scale

    m = mapping_certificate(t)
    tt2 = np.concatenate([tv, [0.0, 1.0]])
    closed2 = 0.5 * m.gamma * np.outer(tt2, tt2)
    scale2 = max(1.0, np.abs(closed2).max())
    assert np.abs(m.bordered - closed2).max() <= 1e-12 * scale2


@pytest.mark.parametrize("label,maker", T_FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 10, 50])
def test_feasibility_sweep(label, maker, n):
    t = maker(n)
    h = step_coefficients(t)
    assert check_feasibility(h, cost_certificate(t)).feasible
    assert check_feasibility(h, mapping_certificate(t)).feasible


def test_perturbed_certificate_is_infeasible():
    t = fista_t_sequence(6)
    h = step_coefficients(t)
    c = cost_certificate(t)
    shrunk = CostCertificate(n=c.n, lam=c.lam, tau=c.tau, gamma=0.9 * c.gamma,
                             bordered=c.bordered)
    report = check_feasibility(h, shrunk)
    assert not report.feasible
    assert report.min_eig < 0


def test_feasibility_horizon_mismatch():
    t = fista_t_sequence(4)
    with pytest.raises(ValueError):
        check_feasibility(step_coefficients(fista_t_sequence(5)), cost_certificate(t))


def test_cost_bound_values():
    t10 = fista_t_sequence(10)
    assert dual_bound_cost(cost_certificate(t10), 1.0, 1.0) == pytest.approx(
        1.0 / (2.0 * t10.sums[-1]), rel=1e-14
    )
    assert dual_bound_cost(cost_certificate(linear_t_sequence(10, 4)), 1.0, 1.0) == pytest.approx(
        4.0 / 170.0, rel=1e-12
    )


def test_mapping_bound_values():
    assert dual_bound_mapping(mapping_certificate(fista_t_sequence(2)), 1.0, 1.0) == pytest.approx(
        0.6180339887498949, abs=1e-7
    )
    opg_val = dual_bound_mapping(mapping_certificate(opg_t_sequence(10)), 1.0, 1.0)
    assert opg_val <= 2.0 * math.sqrt(6.0) / (10.0 * math.sqrt(8.0)) + 1e-12
    lin_val = dual_bound_mapping(mapping_certificate(linear_t_sequence(10, 4)), 1.0, 1.0)
    assert lin_val == pytest.approx(4.0 * math.sqrt(6.0) / math.sqrt(6450.0), rel=1e-12)


def test_min_eigenvalue_basics():
    assert min_eigenvalue(np.eye(5)) == pytest.approx(1.0)
    assert min_eigenvalue(np.diag([1.0, -2.0, 3.0])) == pytest.approx(-2.0)
    rng = np.random.default_rng(3)
    v = rng.normal(size=8)
    lo = min_eigenvalue(np.outer(v, v))
    assert -1e-10 * v @ v <= lo <= 1e-10 * v @ v
    with pytest.raises(ValueError):
        min_eigenvalue(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_quad_objective_values():
    assert quad_objective(custom_t_sequence([1.0, 1.0])) == pytest.approx(3.0)
    t = fista_t_sequence(12)
    assert quad_objective(t) == pytest.approx(float(t.sums[-1]), rel=1e-12)
    assert quad_objective(opg_t_sequence(10)) >= (10 - 2) * 100 / 24.0
    with pytest.raises(ValueError):
        quad_objective(custom_t_sequence([2.0, 1.0]))


def test_maximize_quad_two_step_grid():
    best, info = maximize_quad(2)
    np.testing.assert_allclose(best.values, [1.0, 1.0], atol=1e-9)
    assert info["objective"] == pytest.approx(3.0, abs=1e-9)


def test_maximize_quad_three_step_grid():
    # brute force over the admissible (t1, t2) rectangle
    phi = (1 + math.sqrt(5)) / 2
    best = -np.inf
    for t1 in np.linspace(0.02, phi, 400):
        top = 0.5 * (1 + math.sqrt(1 + 4 * (1 + t1)))
        for t2 in np.linspace(0.02, top, 400):
            if t1 * t1 <= 1 + t1 + 1e-12 and t2 * t2 <= 1 + t1 + t2 + 1e-12:
                best = max(best, quad_objective(custom_t_sequence([1.0, t1, t2])))
    _, info = maximize_quad(3)
    assert info["objective"] == pytest.approx(best, rel=1e-4)
    assert info["objective"] == pytest.approx(6.25, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_maximize_quad_matches_decreasing_tail(n):
    _, info = maximize_quad(n)
    ref = quad_objective(opg_t_sequence(n))
    assert info["objective"] >= ref - 1e-6
    assert abs(info["objective"] - ref) <= 1e-4 * max(1.0, ref)


def test_quad_unconstrained_stationary_point():
    n = 6
    vals = np.array([1.0] + [(n - i + 1) / 2.0 for i in range(1, n)])
    eps = 1e-6
    for i in range(1, n):
        up, down = vals.copy(), vals.copy()
        up[i] += eps
        down[i] -= eps
        deriv = (quad_objective(custom_t_sequence(up))
                 - quad_objective(custom_t_sequence(down))) / (2 * eps)
        assert abs(deriv) <= 1e-7


def test_analytic_bounds_spot_values():
    assert analytic_bounds("pgm", 10, 1, 1).cost_bound == pytest.approx(0.05, abs=1e-9)
    assert analytic_bounds("pgm", 10, 1, 1).mapping_bound == pytest.approx(
        2.0 / math.sqrt(9 * 12), rel=1e-12
    )
    assert analytic_bounds("fpgm", 10, 1, 1).cost_bound == pytest.approx(2.0 / 121.0, rel=1e-12)
    opg = analytic_bounds("fpgm_opg", 10, 1, 1)
    assert opg.cost_bound == pytest.approx(4.0 / 140.0, rel=1e-12)
    assert opg.mapping_bound == pytest.approx(0.1732050807568877, abs=1e-9)
    lin = analytic_bounds("fpgm_a", 10, 1, 1, a=4)
    assert lin.mapping_bound == pytest.approx(4 * math.sqrt(6) / math.sqrt(6450), rel=1e-12)


def test_analytic_bounds_asymptotic_constants():
    pgm = analytic_bounds("pgm", 10, 1, 1)
    assert pgm.cost_constant == pytest.approx(0.5, rel=0.02)
    assert pgm.mapping_constant == pytest.approx(2.0, rel=0.02)
    fpgm = analytic_bounds("fpgm", 10, 1, 1)
    assert fpgm.cost_constant == pytest.approx(2.0, rel=0.02)
    assert fpgm.mapping_constant == pytest.approx(2.0, rel=0.02)
    cut = analytic_bounds("fpgm_m", 30, 1, 1, m=20)
    assert cut.cost_constant == pytest.approx(4.5, rel=0.02)
    assert cut.mapping_constant == pytest.approx(3 * math.sqrt(3), rel=0.02)
    opg = analytic_bounds("fpgm_opg", 10, 1, 1)
    assert opg.cost_constant == pytest.approx(4.0, rel=0.02)
    assert opg.mapping_constant == pytest.approx(2 * math.sqrt(6), rel=0.02)
    lin = analytic_bounds("fpgm_a", 10, 1, 1, a=4)
    assert lin.cost_constant == pytest.approx(4.0, rel=0.02)
    assert lin.mapping_constant == pytest.approx(4 * math.sqrt(6) / math.sqrt(2), rel=0.02)


def test_analytic_bounds_validity_windows():
    assert analytic_bounds("pgm", 1, 1, 1).mapping_bound is None
    assert analytic_bounds("fpgm_opg", 2, 1, 1).mapping_bound is None
    sig = analytic_bounds("fpgm_sigma", 10, 1, 1, sigma=0.78)
    assert sig.mapping_advisory
    assert sig.cost_bound == pytest.approx(2.0 / (0.78**2 * 100.0), rel=1e-12)
    with pytest.raises(ValueError):
        analytic_bounds("bogus", 5, 1, 1)
    with pytest.raises(ValueError):
        analytic_bounds("fpgm_m", 5, 1, 1)
    with pytest.raises(ValueError):
        analytic_bounds("fpgm_a", 5, 1, 1, a=1.5)
    with pytest.raises(ValueError):
        analytic_bounds("pgm", 0, 1, 1)


def test_analytic_bounds_gfpgm_formulas():
    t = linear_t_sequence(10, 4)
    rep = analytic_bounds("gfpgm", 10, 2.0, 1.5, t=t)
    assert rep.cost_bound == pytest.approx(2.0 * 1.5**2 / (2 * t.sums[-1]), rel=1e-12)
    denom = float((t.sums - t.values**2).sum() + t.sums[-1])
    assert rep.mapping_bound == pytest.approx(2.0 * 1.5 / math.sqrt(denom), rel=1e-12)
    assert rep.cost_constant is None
    with pytest.raises(ValueError):
        analytic_bounds("gfpgm", 9, 1, 1, t=t)
