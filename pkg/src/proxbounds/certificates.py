"""Dual certificates for worst-case bounds of fixed-step first-order methods.

A run of N prox-gradient iterations satisfies a family of quadratic
inequalities linking the mapping values at consecutive momentum points
(and anchoring each point to the minimizer).  Nonnegative multipliers
(lam, tau[, eta, beta], gamma) combine those inequalities into a single
quadratic form; when the bordered matrix assembled from the multipliers
is positive semidefinite, the combination certifies

    cost bound     F(x_N) - F_star       <= (1/2) L R^2 gamma,
    mapping bound  min over the momentum points and x_N of the
                   mapping norm          <= L R sqrt(gamma / 2).

This module builds the constraint matrices, the closed-form multiplier
choices attached to any admissible t-sequence, eigenvalue-based
feasibility checks, the analytic bound formulas, and the maximizer of
the mapping-bound denominator over admissible t-sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import SplitMix64
from .schedules import (
    StepSchedule,
    TSequence,
    custom_t_sequence,
    fista_t_sequence,
    linear_t_sequence,
    opg_t_sequence,
    step_coefficients,
    validate_t_sequence,
)

__all__ = [
    "consecutive_matrix",
    "anchor_matrix",
    "dual_matrix",
    "dual_matrix_mapping",
    "CostCertificate",
    "MappingCertificate",
    "cost_certificate",
    "mapping_certificate",
    "FeasibilityReport",
    "check_feasibility",
    "dual_bound_cost",
    "dual_bound_mapping",
    "min_eigenvalue",
    "quad_objective",
    "maximize_quad",
    "BoundReport",
    "analytic_bounds",
]

Array = np.ndarray


def min_eigenvalue(M: Array, sym_tol: float = 1e-12) -> float:
    """Smallest eigenvalue of a symmetric matrix via eigendecomposition.

    Raises if the input deviates from symmetry by more than ``sym_tol``
    relative to its largest entry.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.abs(M).max()))
    if float(np.abs(M - M.T).max()) > sym_tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return float(np.linalg.eigvalsh(M)[0])


def consecutive_matrix(h: StepSchedule, i: int) -> Array:
    """Quadratic form of the inequality linking momentum points i-1 and i.

    N x N symmetric with (i, i) entry 1/2, (i, i-1) entries
    (h[i, i-1] - 1)/2, and (i, k) entries h[i, k]/2 for k < i - 1.
    """
    n = h.horizon
    if not 1 <= i <= n - 1:
        raise ValueError(f"index {i} outside 1..{n - 1}")
    A = np.zeros((n, n))
    A[i, i] = 0.5
    A[i - 1, i] -= 0.5
    A[i, i - 1] -= 0.5
    row = 0.5 * h.coeffs[i, :i]
    A[i, :i] += row
    A[:i, i] += row
    return A


def anchor_matrix(h: StepSchedule, i: int) -> Array:
    """Quadratic form of the inequality anchoring momentum point i to the minimizer.

    N x N symmetric with (i, i) entry 1/2 and (i, k) entries equal to
    half the column sums sum_{j=k+1}^{i} h[j, k] for k < i.
    """
    n = h.horizon
    if not 0 <= i <= n - 1:
        raise ValueError(f"index {i} outside 0..{n - 1}")
    D = np.zeros((n, n))
    D[i, i] = 0.5
    if i >= 1:
        colsum = 0.5 * h.coeffs[1 : i + 1, :i].sum(axis=0)
        D[i, :i] += colsum
        D[:i, i] += colsum
    return D


def dual_matrix(h: StepSchedule, lam: Array, tau: Array) -> Array:
    """Multiplier-weighted sum of the constraint matrices (cost form).

    S = sum_i lam_i * consecutive_matrix(h, i) + sum_i tau_i * anchor_matrix(h, i),
    with lam of length N-1 and tau of length N.
    """
    n = h.horizon
    lam = np.asarray(lam, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if lam.shape != (n - 1,):
        raise ValueError(f"lam must have length {n - 1}")
    if tau.shape != (n,):
        raise ValueError(f"tau must have length {n}")
    S = np.zeros((n, n))
    for i in range(1, n):
        S += lam[i - 1] * consecutive_matrix(h, i)
    for i in range(n):
        S += tau[i] * anchor_matrix(h, i)
    return S


def dual_matrix_mapping(
    h: StepSchedule, lam: Array, tau: Array, eta: float, beta: Array
) -> Array:
    """Multiplier-weighted constraint matrix for the mapping form.

    The cost-form matrices are zero padded to (N+1) x (N+1) to make room
    for the mapping value at the final iterate; eta/2 is added at the
    padded diagonal corner and beta is subtracted from the full diagonal.
    """
    n = h.horizon
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (n + 1,):
        raise ValueError(f"beta must have length {n + 1}")
    S = np.zeros((n + 1, n + 1))
    S[:n, :n] = dual_matrix(h, lam, tau)
    S[n, n] += 0.5 * float(eta)
    S[np.arange(n + 1), np.arange(n + 1)] -= beta
    return S


def _bordered_cost(h: StepSchedule, lam: Array, tau: Array, gamma: float) -> Array:
    n = h.horizon
    M = np.zeros((n + 1, n + 1))
    M[:n, :n] = dual_matrix(h, lam, tau)
    M[:n, n] = 0.5 * tau
    M[n, :n] = 0.5 * tau
    M[n, n] = 0.5 * gamma
    return M


def _bordered_mapping(
    h: StepSchedule, lam: Array, tau: Array, eta: float, beta: Array, gamma: float
) -> Array:
    n = h.horizon
    M = np.zeros((n + 2, n + 2))
    M[: n + 1, : n + 1] = dual_matrix_mapping(h, lam, tau, eta, beta)
    M[:n, n + 1] = 0.5 * tau
    M[n + 1, :n] = 0.5 * tau
    M[n + 1, n + 1] = 0.5 * gamma
    return M


def _negativity(*groups: Array | float) -> float:
    worst = 0.0
    for g in groups:
        arr = np.atleast_1d(np.asarray(g, dtype=float))
        if arr.size:
            worst = max(worst, float(np.maximum(-arr, 0.0).max()))
    return worst


@dataclass
class CostCertificate:
    """Multipliers certifying a cost bound, plus the assembled bordered matrix.

    Membership requires tau_0 = lam_1, lam_{N-1} + tau_{N-1} = 1, the
    telescoping identities lam_i - lam_{i+1} + tau_i = 0 in between, and
    nonnegativity of every multiplier (tau_0 = 1 when N = 1).
    """

    n: int
    lam: Array
    tau: Array
    gamma: float
    bordered: Array

    def membership_residual(self) -> float:
        res = _negativity(self.lam, self.tau, self.gamma)
        if self.n == 1:
            return max(res, abs(self.tau[0] - 1.0))
        res = max(res, abs(self.tau[0] - self.lam[0]))
        res = max(res, abs(self.lam[-1] + self.tau[-1] - 1.0))
        for i in range(1, self.n - 1):
            res = max(res, abs(self.lam[i - 1] - self.lam[i] + self.tau[i]))
        return res


@dataclass
class MappingCertificate:
    """Multipliers certifying a mapping-norm bound, with the bordered matrix.

    Membership requires tau_0 = lam_1, lam_{N-1} + tau_{N-1} = eta, the
    interior telescoping identities, beta summing to one, and
    nonnegativity (tau_0 = eta when N = 1).
    """

    n: int
    lam: Array
    tau: Array
    eta: float
    beta: Array
    gamma: float
    bordered: Array

    def membership_residual(self) -> float:
        res = _negativity(self.lam, self.tau, self.eta, self.beta, self.gamma)
        res = max(res, abs(float(self.beta.sum()) - 1.0))
        if self.n == 1:
            return max(res, abs(self.tau[0] - self.eta))
        res = max(res, abs(self.tau[0] - self.lam[0]))
        res = max(res, abs(self.lam[-1] + self.tau[-1] - self.eta))
        for i in range(1, self.n - 1):
            res = max(res, abs(self.lam[i - 1] - self.lam[i] + self.tau[i]))
        return res


def cost_certificate(t: TSequence) -> CostCertificate:
    """Closed-form cost certificate attached to an admissible t-sequence.

    lam_i = T_{i-1}/T_{N-1}, tau_i = t_i/T_{N-1}, gamma = 1/T_{N-1}.
    With the matching step coefficients the bordered matrix collapses to
    (diag(Tt - tt^2) + tt tt') / (2 T_{N-1}) for tt = (t_0..t_{N-1}, 1)
    and Tt = (T_0..T_{N-1}, 1), which is positive semidefinite whenever
    t_i^2 <= T_i.
    """
    report = validate_t_sequence(t)
    if not report.ok:
        raise ValueError(f"invalid t-sequence {t.label!r}: {report.violations}")
    n = t.horizon
    tv, Ts = t.values, t.sums
    T_last = float(Ts[-1])
    lam = Ts[: n - 1] / T_last
    tau = tv / T_last
    gamma = 1.0 / T_last
    h = step_coefficients(t)
    return CostCertificate(
        n=n, lam=lam, tau=tau, gamma=gamma, bordered=_bordered_cost(h, lam, tau, gamma)
    )


def mapping_certificate(t: TSequence) -> MappingCertificate:
    """Closed-form mapping certificate attached to an admissible t-sequence.

    With denom = (sum_k (T_k - t_k^2) + T_{N-1}) / 2 the multipliers are
    tau_0 = 1/denom, lam_i = T_{i-1} tau_0, tau_i = t_i tau_0,
    eta = T_{N-1} tau_0, beta_i = (T_i - t_i^2) tau_0 / 2 for i < N,
    beta_N = T_{N-1} tau_0 / 2, gamma = tau_0.  The bordered matrix
    collapses to the rank-one form (tau_0 / 2) tt tt' with
    tt = (t_0..t_{N-1}, 0, 1).
    """
    report = validate_t_sequence(t)
    if not report.ok:
        raise ValueError(f"invalid t-sequence {t.label!r}: {report.violations}")
    n = t.horizon
    tv, Ts = t.values, t.sums
    slack = Ts - tv**2
    denom = 0.5 * (float(slack.sum()) + float(Ts[-1]))
    if denom <= 0:
        raise ValueError("mapping-bound denominator must be positive")
    tau0 = 1.0 / denom
    lam = Ts[: n - 1] * tau0
    tau = tv * tau0
    eta = float(Ts[-1]) * tau0
    beta = np.append(0.5 * slack * tau0, 0.5 * float(Ts[-1]) * tau0)
    gamma = tau0
    h = step_coefficients(t)
    return MappingCertificate(
        n=n,
        lam=lam,
        tau=tau,
        eta=eta,
        beta=beta,
        gamma=gamma,
        bordered=_bordered_mapping(h, lam, tau, eta, beta, gamma),
    )


@dataclass
class FeasibilityReport:
    """Eigenvalue and membership diagnostics for a certificate."""

    kind: str
    n: int
    feasible: bool
    min_eig: float
    scale: float
    membership_residual: float

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "feasible": self.feasible,
            "min_eigenvalue": self.min_eig,
            "scale": self.scale,
            "membership_residual": self.membership_residual,
        }


def check_feasibility(
    h: StepSchedule,
    cert: CostCertificate | MappingCertificate,
    eig_tol: float = 1e-10,
    membership_tol: float = 1e-12,
) -> FeasibilityReport:
    """Assemble the bordered matrix for ``h`` and test positive semidefiniteness.

    Feasible iff the smallest eigenvalue is at least -eig_tol times the
    largest absolute entry and the membership residual is within
    ``membership_tol``.
    """
    if h.horizon != cert.n:
        raise ValueError(f"schedule horizon {h.horizon} does not match certificate {cert.n}")
    if isinstance(cert, CostCertificate):
        M = _bordered_cost(h, cert.lam, cert.tau, cert.gamma)
        kind = "cost"
    elif isinstance(cert, MappingCertificate):
        M = _bordered_mapping(h, cert.lam, cert.tau, cert.eta, cert.beta, cert.gamma)
        kind = "mapping"
    else:
        raise TypeError(f"unsupported certificate type {type(cert)!r}")
    scale = max(1e-30, float(np.abs(M).max()))
    mn = min_eigenvalue(M)
    res = float(cert.membership_residual())
    feasible = bool(mn >= -eig_tol * scale and res <= membership_tol)
    return FeasibilityReport(
        kind=kind,
        n=cert.n,
        feasible=feasible,
        min_eig=mn,
        scale=scale,
        membership_residual=res,
    )


def dual_bound_cost(cert: CostCertificate, L: float, R: float) -> float:
    """Certified cost bound (1/2) L R^2 gamma; equals L R^2 / (2 T_{N-1})
    for the closed-form certificate."""
    return 0.5 * L * R * R * cert.gamma


def dual_bound_mapping(cert: MappingCertificate, L: float, R: float) -> float:
    """Certified bound L R sqrt(gamma/2) on the smallest mapping norm;
    equals L R / sqrt(sum_k (T_k - t_k^2) + T_{N-1}) for the closed-form
    certificate."""
    return L * R * math.sqrt(cert.gamma / 2.0)


def quad_objective(t: TSequence) -> float:
    """Mapping-bound denominator sum_k (T_k - t_k^2) + T_{N-1} of a t-sequence.

    Requires t_0 = 1; admissibility of the remaining entries is not
    needed to evaluate the formula.
    """
    tv, Ts = t.values, t.sums
    if abs(tv[0] - 1.0) > 1e-12:
        raise ValueError("t_0 must equal 1")
    return float((Ts - tv**2).sum() + Ts[-1])


def maximize_quad(
    n: int,
    restarts: int = 20,
    max_sweeps: int = 10_000,
    seed: int = 0,
    improvement_tol: float = 1e-12,
) -> tuple[TSequence, dict]:
    """Maximize the mapping-bound denominator over admissible t-sequences.

    Projected coordinate ascent: each coordinate is a concave quadratic
    with per-coordinate optimum (N - i + 1)/2, clamped to the interval
    allowed by its own admissibility constraint t_i <= (1 + sqrt(1 +
    4 T_{i-1}))/2 from above and by the slack of later constraints from
    below.  Runs from the decreasing-tail sequence, its ceil-rounded
    twin, the fista and linear families, plus ``restarts`` random
    feasible starts, and returns the best sequence with an info dict.
    """
    if n < 1:
        raise ValueError("horizon must be a positive integer")
    if n == 1:
        t = custom_t_sequence([1.0], label="quadopt(1)")
        return t, {"objective": quad_objective(t), "sweeps": 0, "starts": 1, "converged": True}

    def ascend(tv: Array) -> tuple[Array, float, int, bool]:
        tv = tv.copy()
        Ts = np.cumsum(tv)
        obj = float((Ts - tv**2).sum() + Ts[-1])
        for sweep in range(1, max_sweeps + 1):
            for i in range(1, n):
                upper = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * Ts[i - 1]))
                if i < n - 1:
                    later_slack = float((Ts[i + 1 :] - tv[i + 1 :] ** 2).min())
                    lower = max(1e-12, tv[i] - later_slack)
                else:
                    lower = 1e-12
                new = min(max(0.5 * (n - i + 1), lower), upper)
                if new != tv[i]:
                    Ts[i:] += new - tv[i]
                    tv[i] = new
            new_obj = float((Ts - tv**2).sum() + Ts[-1])
            if new_obj - obj < improvement_tol:
                return tv, new_obj, sweep, True
            obj = new_obj
        return tv, obj, max_sweeps, False

    starts: list[Array] = [
        opg_t_sequence(n, "floor").values,
        opg_t_sequence(n, "ceil").values,
        fista_t_sequence(n).values,
        linear_t_sequence(n, 2.0).values,
    ]
    rng = SplitMix64(seed)
    for _ in range(restarts):
        tv = np.empty(n)
        tv[0] = 1.0
        total = 1.0
        for i in range(1, n):
            upper = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * total))
            tv[i] = 0.05 + rng.uniform() * (upper - 0.05)
            total += tv[i]
        starts.append(tv)

    best_tv: Array | None = None
    best_obj = -math.inf
    total_sweeps = 0
    all_converged = True
    for start in starts:
        tv, obj, sweeps, converged = ascend(start)
        total_sweeps += sweeps
        all_converged = all_converged and converged
        if obj > best_obj:
            best_obj, best_tv = obj, tv
    assert best_tv is not None
    best = custom_t_sequence(best_tv, label=f"quadopt({n})")
    info = {
        "objective": best_obj,
        "sweeps": total_sweeps,
        "starts": len(starts),
        "converged": all_converged,
    }
    return best, info


@dataclass
class BoundReport:
    """Closed-form worst-case bounds for one algorithm at a given (N, L, R).

    ``cost_constant``/``mapping_constant`` are the dimensionless limits
    bound(N) * N^rate evaluated at N = 10^6 with L = R = 1 (None when
    the algorithm has no scale-free limit, e.g. a fixed t-sequence).
    ``mapping_advisory`` marks bounds that are reported but not treated
    as verified contracts.
    """

    algorithm: str
    n: int
    L: float
    R: float
    cost_bound: float | None
    cost_formula: str
    mapping_bound: float | None
    mapping_formula: str
    cost_constant: float | None
    mapping_constant: float | None
    mapping_advisory: bool = False


_ASYMPTOTIC_N = 10**6


def _pgm_cost(n: int, L: float, R: float) -> float:
    return L * R * R / (2.0 * n)


def _pgm_mapping(n: int, L: float, R: float) -> float:
    return 2.0 * L * R / math.sqrt((n - 1.0) * (n + 2.0))


def _fpgm_cost(n: int, L: float, R: float) -> float:
    return 2.0 * L * R * R / (n + 1.0) ** 2


def _fpgm_mapping(n: int, L: float, R: float) -> float:
    # Loose version of the certificate value L R / sqrt(T_{N-1}) using
    # t_{N-1} >= (N + 1)/2.
    return 2.0 * L * R / (n + 1.0)


def _fpgm_m_cost(n: int, L: float, R: float, m: int) -> float:
    return 2.0 * L * R * R / (m + 1.0) ** 2


def _fpgm_m_mapping(n: int, L: float, R: float, m: int) -> float:
    return 2.0 * L * R / ((m + 1.0) * math.sqrt(n - m + 1.0))


def _sigma_cost(n: int, L: float, R: float, sigma: float) -> float:
    return 2.0 * L * R * R / (sigma**2 * n**2)


def _sigma_mapping(n: int, L: float, R: float, sigma: float) -> float:
    return (2.0 * math.sqrt(3.0) / sigma) * math.sqrt((1.0 + sigma) / (1.0 - sigma)) * L * R / n**1.5


def _opg_cost(n: int, L: float, R: float) -> float:
    return 4.0 * L * R * R / (n * (n + 4.0))


def _opg_mapping(n: int, L: float, R: float) -> float:
    return 2.0 * math.sqrt(6.0) * L * R / (n * math.sqrt(n - 2.0))


def _linear_cost(n: int, L: float, R: float, a: float) -> float:
    return a * L * R * R / (n * (n + 2.0 * a - 1.0))


def _linear_mapping(n: int, L: float, R: float, a: float) -> float:
    poly = (a - 2.0) * n**2 + 3.0 * (a**2 - a + 1.0) * n + (3.0 * a**2 + 2.0 * a - 1.0)
    return a * math.sqrt(6.0) * L * R / math.sqrt(n * poly)


def analytic_bounds(
    algorithm: str,
    n: int,
    L: float,
    R: float,
    *,
    m: int | None = None,
    sigma: float | None = None,
    a: float | None = None,
    t: TSequence | None = None,
) -> BoundReport:
    """Evaluate every closed-form bound applicable to ``algorithm`` at (n, L, R).

    Supported algorithms: ``pgm``, ``fpgm``, ``fpgm_m`` (requires m),
    ``fpgm_sigma`` (requires sigma; its mapping bound is advisory),
    ``fpgm_opg``, ``fpgm_a`` (requires a >= 2) and ``gfpgm`` (requires a
    t-sequence of horizon n).  Bounds whose validity threshold exceeds n
    are reported as None.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    big = _ASYMPTOTIC_N
    advisory = False
    cost_const: float | None
    map_const: float | None

    if algorithm == "pgm":
        cost = _pgm_cost(n, L, R)
        mapping = _pgm_mapping(n, L, R) if n >= 2 else None
        cost_f, map_f = "L R^2 / (2 N)", "2 L R / sqrt((N-1)(N+2))"
        cost_const = _pgm_cost(big, 1, 1) * big
        map_const = _pgm_mapping(big, 1, 1) * big
    elif algorithm == "fpgm":
        cost = _fpgm_cost(n, L, R)
        mapping = _fpgm_mapping(n, L, R)
        cost_f, map_f = "2 L R^2 / (N+1)^2", "2 L R / (N+1)"
        cost_const = _fpgm_cost(big, 1, 1) * big**2
        map_const = _fpgm_mapping(big, 1, 1) * big
    elif algorithm == "fpgm_m":
        if m is None or not 1 <= m <= n:
            raise ValueError("fpgm_m bounds need 1 <= m <= n")
        cost = _fpgm_m_cost(n, L, R, m)
        mapping = _fpgm_m_mapping(n, L, R, m)
        cost_f = "2 L R^2 / (m+1)^2"
        map_f = "2 L R / ((m+1) sqrt(N-m+1))"
        # Scale-free constants use the asymptotically best policy m = 2N/3.
        m_big = (2 * big) // 3
        cost_const = _fpgm_m_cost(big, 1, 1, m_big) * big**2
        map_const = _fpgm_m_mapping(big, 1, 1, m_big) * big**1.5
    elif algorithm == "fpgm_sigma":
        if sigma is None or not 0.0 < sigma < 1.0:
            raise ValueError("fpgm_sigma bounds need 0 < sigma < 1")
        cost = _sigma_cost(n, L, R, sigma)
        mapping = _sigma_mapping(n, L, R, sigma)
        cost_f = "2 L R^2 / (sigma^2 N^2)"
        map_f = "(2 sqrt(3)/sigma) sqrt((1+sigma)/(1-sigma)) L R / N^(3/2)"
        cost_const = _sigma_cost(big, 1, 1, sigma) * big**2
        map_const = _sigma_mapping(big, 1, 1, sigma) * big**1.5
        advisory = True
    elif algorithm == "fpgm_opg":
        cost = _opg_cost(n, L, R)
        mapping = _opg_mapping(n, L, R) if n >= 3 else None
        cost_f, map_f = "4 L R^2 / (N(N+4))", "2 sqrt(6) L R / (N sqrt(N-2))"
        cost_const = _opg_cost(big, 1, 1) * big**2
        map_const = _opg_mapping(big, 1, 1) * big**1.5
    elif algorithm == "fpgm_a":
        if a is None or a < 2:
            raise ValueError("fpgm_a bounds need a >= 2")
        cost = _linear_cost(n, L, R, a)
        mapping = _linear_mapping(n, L, R, a)
        cost_f = "a L R^2 / (N(N+2a-1))"
        map_f = "a sqrt(6) L R / sqrt(N((a-2)N^2 + 3(a^2-a+1)N + 3a^2+2a-1))"
        cost_const = _linear_cost(big, 1, 1, a) * big**2
        map_const = _linear_mapping(big, 1, 1, a) * big**1.5 if a > 2 else None
    elif algorithm == "gfpgm":
        if t is None:
            raise ValueError("gfpgm bounds need a t-sequence")
        if t.horizon != n:
            raise ValueError(f"t-sequence horizon {t.horizon} does not match n = {n}")
        report = validate_t_sequence(t)
        if not report.ok:
            raise ValueError(f"invalid t-sequence: {report.violations}")
        T_last = float(t.sums[-1])
        denom = float((t.sums - t.values**2).sum()) + T_last
        cost = L * R * R / (2.0 * T_last)
        mapping = L * R / math.sqrt(denom)
        cost_f = "L R^2 / (2 T_{N-1})"
        map_f = "L R / sqrt(sum_k (T_k - t_k^2) + T_{N-1})"
        cost_const = None
        map_const = None
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")

    return BoundReport(
        algorithm=algorithm,
        n=n,
        L=L,
        R=R,
        cost_bound=cost,
        cost_formula=cost_f,
        mapping_bound=mapping,
        mapping_formula=map_f,
        cost_constant=cost_const,
        mapping_constant=map_const,
        mapping_advisory=advisory,
    )
