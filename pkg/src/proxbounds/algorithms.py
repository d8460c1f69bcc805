"""Runners for the fixed-step first-order family, producing full iteration traces."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .problems import CompositeProblem, InitialCondition, eval_F
from .proxgrad import prox_grad_step
from .schedules import (
    StepSchedule,
    TSequence,
    opg_t_sequence,
    validate_t_sequence,
)

__all__ = [
    "RunTrace",
    "run_fo",
    "run_pgm",
    "run_gfpgm",
    "run_gfpgm_prime",
    "run_fpgm",
    "run_fpgm_m",
    "run_fpgm_sigma",
    "run_fpgm_opg",
    "SIGMA_CONSTANTS",
]

Array = np.ndarray

#: Interpretations of the modified prox constant used by the sigma variant.
SIGMA_CONSTANTS = ("L_over_sigma", "sigma_L")


@dataclass
class RunTrace:
    """Per-iteration record of a fixed-step first-order run.

    Stores the iterates x_0..x_N, the momentum points y_0..y_{N-1}, the
    cost values F(x_i) and the gradient-mapping norms at every y_i plus
    at the final iterate x_N.  Mapping values at the y_i reuse the
    differences computed inside the update (no second prox evaluation),
    so equivalence tests compare bit-identical quantities.
    """

    label: str
    params: dict
    xs: Array
    ys: Array
    F_vals: Array
    map_norms_y: Array
    map_norm_final: float
    prox_constant: float
    zs: Array | None = None

    @property
    def n_iter(self) -> int:
        return self.xs.shape[0] - 1

    @property
    def omega_min(self) -> float:
        """Smallest mapping norm over exactly {y_0..y_{N-1}, x_N}."""
        return float(min(self.map_norms_y.min(), self.map_norm_final))

    def csv_rows(self, F_star: float) -> list[dict]:
        """Rows iter, F_gap, map_norm_y, map_norm_xN, omega_min_cum."""
        rows = []
        running = math.inf
        n = self.n_iter
        for i in range(n + 1):
            row: dict = {"iter": i, "F_gap": float(self.F_vals[i] - F_star)}
            if i < n:
                running = min(running, float(self.map_norms_y[i]))
                row["map_norm_y"] = float(self.map_norms_y[i])
                row["map_norm_xN"] = None
            else:
                running = min(running, self.map_norm_final)
                row["map_norm_y"] = None
                row["map_norm_xN"] = self.map_norm_final
            row["omega_min_cum"] = running
            rows.append(row)
        return rows


def _start(problem: CompositeProblem, init: InitialCondition, n: int) -> Array:
    if n < 1:
        raise ValueError("iteration count must be a positive integer")
    x0 = problem.require_dim(init.x0)
    if problem.x_star is not None:
        dist = float(np.linalg.norm(x0 - problem.x_star))
        if dist > init.R + 1e-12:
            raise ValueError(
                f"R = {init.R:g} is smaller than the distance {dist:g} to the reference minimizer"
            )
    return x0


def _trace(
    problem: CompositeProblem,
    label: str,
    params: dict,
    xs: list[Array],
    ys: list[Array],
    maps: list[float],
    c: float,
    zs: list[Array] | None = None,
) -> RunTrace:
    xs_arr = np.array(xs)
    final_prox = problem.prox(xs_arr[-1] - problem.grad_f(xs_arr[-1]) / c, c)
    final_norm = float(c * np.linalg.norm(xs_arr[-1] - final_prox))
    return RunTrace(
        label=label,
        params=params,
        xs=xs_arr,
        ys=np.array(ys),
        F_vals=np.array([eval_F(problem, x) for x in xs_arr]),
        map_norms_y=np.array(maps),
        map_norm_final=final_norm,
        prox_constant=c,
        zs=None if zs is None else np.array(zs),
    )


def run_fo(
    problem: CompositeProblem, h: StepSchedule, init: InitialCondition, n: int
) -> RunTrace:
    """Fixed-step first-order run with explicit step coefficients.

    y_0 = x_0, x_{i+1} is the prox step at y_i, and
    y_{i+1} = y_i + sum_{k<=i} h[i+1, k] (x_{k+1} - y_k).  The mapping
    at y_k is L (y_k - x_{k+1}), recorded from the stored differences.
    """
    x0 = _start(problem, init, n)
    if h.horizon < n:
        raise ValueError(f"schedule horizon {h.horizon} is too small for {n} iterations")
    L = problem.L
    xs = [x0]
    ys = [x0]
    diffs = np.empty((n, problem.dim))
    maps = []
    y = x0
    for i in range(n):
        x_next = prox_grad_step(problem, y, L)
        diffs[i] = x_next - y
        maps.append(float(L * np.linalg.norm(diffs[i])))
        xs.append(x_next)
        if i < n - 1:
            y = y + h.coeffs[i + 1, : i + 1] @ diffs[: i + 1]
            ys.append(y)
    return _trace(problem, "fo", {"horizon": h.horizon}, xs, ys, maps, L)


def run_pgm(problem: CompositeProblem, init: InitialCondition, n: int) -> RunTrace:
    """Plain proximal gradient: x_{i+1} is the prox step at x_i (y_i = x_i)."""
    x0 = _start(problem, init, n)
    L = problem.L
    xs = [x0]
    ys = []
    maps = []
    x = x0
    for _ in range(n):
        ys.append(x)
        x_next = prox_grad_step(problem, x, L)
        maps.append(float(L * np.linalg.norm(x_next - x)))
        xs.append(x_next)
        x = x_next
    return _trace(problem, "pgm", {}, xs, ys, maps, L)


def run_gfpgm(
    problem: CompositeProblem,
    t: TSequence,
    init: InitialCondition,
    label: str | None = None,
    params: dict | None = None,
) -> RunTrace:
    """Generalized momentum run driven by an admissible t-sequence.

    y_{i+1} = x_{i+1}
              + ((T_i - t_i) t_{i+1} / (t_i T_{i+1})) (x_{i+1} - x_i)
              + ((t_i^2 - T_i) t_{i+1} / (t_i T_{i+1})) (x_{i+1} - y_i),
    run for N = t.horizon iterations; the last y-update is skipped since
    it would need t_N.
    """
    report = validate_t_sequence(t)
    if not report.ok:
        raise ValueError(f"invalid t-sequence {t.label!r}: {report.violations}")
    n = t.horizon
    x0 = _start(problem, init, n)
    L = problem.L
    tv, Ts = t.values, t.sums
    xs = [x0]
    ys = [x0]
    maps = []
    y = x0
    for i in range(n):
        x_next = prox_grad_step(problem, y, L)
        maps.append(float(L * np.linalg.norm(x_next - y)))
        if i < n - 1:
            c1 = (Ts[i] - tv[i]) * tv[i + 1] / (tv[i] * Ts[i + 1])
            c2 = (tv[i] ** 2 - Ts[i]) * tv[i + 1] / (tv[i] * Ts[i + 1])
            y = x_next + c1 * (x_next - xs[-1]) + c2 * (x_next - y)
            ys.append(y)
        xs.append(x_next)
    return _trace(
        problem,
        label or f"gfpgm({t.label})",
        params if params is not None else {"t": t.label},
        xs,
        ys,
        maps,
        L,
    )


def run_gfpgm_prime(
    problem: CompositeProblem, t: TSequence, init: InitialCondition
) -> RunTrace:
    """Equivalent aggregated form of :func:`run_gfpgm`.

    Maintains z_{i+1} = y_0 - (1/L) sum_{k<=i} t_k g_k with g_k the
    mapping at y_k, and mixes y_{i+1} = (1 - w) x_{i+1} + w z_{i+1} with
    w = t_{i+1}/T_{i+1}.  Produces the same iterates as the recursive
    form; the trace additionally stores z_1..z_N.
    """
    report = validate_t_sequence(t)
    if not report.ok:
        raise ValueError(f"invalid t-sequence {t.label!r}: {report.violations}")
    n = t.horizon
    x0 = _start(problem, init, n)
    L = problem.L
    tv, Ts = t.values, t.sums
    xs = [x0]
    ys = [x0]
    zs = []
    maps = []
    y = x0
    z = x0.copy()
    for i in range(n):
        x_next = prox_grad_step(problem, y, L)
        maps.append(float(L * np.linalg.norm(x_next - y)))
        z = z - tv[i] * (y - x_next)
        zs.append(z)
        if i < n - 1:
            w = tv[i + 1] / Ts[i + 1]
            y = (1.0 - w) * x_next + w * z
            ys.append(y)
        xs.append(x_next)
    return _trace(
        problem, f"gfpgm_prime({t.label})", {"t": t.label}, xs, ys, maps, L, zs=zs
    )


def run_fpgm(problem: CompositeProblem, init: InitialCondition, n: int) -> RunTrace:
    """Classic accelerated run: t_{i+1} = (1 + sqrt(1 + 4 t_i^2))/2 momentum."""
    x0 = _start(problem, init, n)
    L = problem.L
    xs = [x0]
    ys = [x0]
    maps = []
    y = x0
    t = 1.0
    for i in range(n):
        x_next = prox_grad_step(problem, y, L)
        maps.append(float(L * np.linalg.norm(x_next - y)))
        if i < n - 1:
            t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
            y = x_next + ((t - 1.0) / t_next) * (x_next - xs[-1])
            ys.append(y)
            t = t_next
        xs.append(x_next)
    return _trace(problem, "fpgm", {}, xs, ys, maps, L)


def run_fpgm_m(
    problem: CompositeProblem, init: InitialCondition, m: int, n: int
) -> RunTrace:
    """Accelerated momentum for the first m iterations, plain prox steps after.

    For i <= m - 1 the update matches :func:`run_fpgm`; afterwards
    y_{i+1} = x_{i+1}, which monotonically shrinks the mapping norm.
    """
    if not 1 <= m <= n:
        raise ValueError(f"m must satisfy 1 <= m <= {n}, got {m}")
    x0 = _start(problem, init, n)
    L = problem.L
    xs = [x0]
    ys = [x0]
    maps = []
    y = x0
    t = 1.0
    for i in range(n):
        x_next = prox_grad_step(problem, y, L)
        maps.append(float(L * np.linalg.norm(x_next - y)))
        if i < n - 1:
            if i <= m - 1:
                t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
                y = x_next + ((t - 1.0) / t_next) * (x_next - xs[-1])
                t = t_next
            else:
                y = x_next
            ys.append(y)
        xs.append(x_next)
    return _trace(problem, f"fpgm_m({m})", {"m": m}, xs, ys, maps, L)


def run_fpgm_sigma(
    problem: CompositeProblem,
    init: InitialCondition,
    sigma: float,
    n: int,
    constant: str = "L_over_sigma",
) -> RunTrace:
    """Accelerated run with the prox step taken at a sigma-modified constant.

    With ``constant="L_over_sigma"`` (default) the prox step uses
    c = L/sigma, i.e. step size sigma/L; ``"sigma_L"`` uses c = sigma L
    instead.  Mapping values are recorded at the modified constant c.
    """
    sigma = float(sigma)
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie strictly between 0 and 1")
    if constant not in SIGMA_CONSTANTS:
        raise ValueError(f"constant must be one of {SIGMA_CONSTANTS}")
    x0 = _start(problem, init, n)
    c = problem.L / sigma if constant == "L_over_sigma" else sigma * problem.L
    xs = [x0]
    ys = [x0]
    maps = []
    y = x0
    t = 1.0
    for i in range(n):
        x_next = prox_grad_step(problem, y, c)
        maps.append(float(c * np.linalg.norm(x_next - y)))
        if i < n - 1:
            t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
            y = x_next + ((t - 1.0) / t_next) * (x_next - xs[-1])
            ys.append(y)
            t = t_next
        xs.append(x_next)
    return _trace(
        problem,
        f"fpgm_sigma({sigma:g})",
        {"sigma": sigma, "constant": constant, "c": c},
        xs,
        ys,
        maps,
        c,
    )


def run_fpgm_opg(
    problem: CompositeProblem,
    init: InitialCondition,
    n: int,
    rounding: str = "floor",
) -> RunTrace:
    """Momentum run with the mapping-optimized t-sequence of horizon n."""
    t = opg_t_sequence(n, rounding=rounding)
    return run_gfpgm(
        problem, t, init, label="fpgm_opg", params={"rounding": rounding}
    )
