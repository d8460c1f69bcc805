"""Composite convex problems F = f + phi with gradient and prox oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "CompositeProblem",
    "InitialCondition",
    "make_quadratic_l1",
    "make_box_constrained_ls",
    "eval_F",
    "solve_reference",
    "initial_from_reference",
    "soft_threshold",
    "problem_to_json",
    "problem_from_json",
]

Array = np.ndarray


def soft_threshold(v: Array, thresh: float) -> Array:
    """Componentwise shrinkage sign(v) * max(|v| - thresh, 0)."""
    return np.sign(v) * np.maximum(np.abs(v) - thresh, 0.0)


@dataclass
class CompositeProblem:
    """Minimization target F(x) = f(x) + phi(x).

    f is convex with an L-Lipschitz gradient and phi is proper closed
    convex with a cheap prox.  ``prox(v, c)`` must return
    argmin_x { (c/2)||x - v||^2 + phi(x) } for any c > 0.  phi may take
    the value +inf (indicator functions), so F is extended-real valued.

    Attributes
    ----------
    dim : int
        Ambient dimension.
    f, grad_f : callable
        Smooth part and its gradient.
    L : float
        Lipschitz constant of grad_f.  For the shipped quadratic
        instances this is the exact largest Hessian eigenvalue, never an
        upper estimate, so worst-case bound checks are not slackened.
    phi : callable
        Nonsmooth part, may return ``math.inf``.
    prox : callable
        Scaled proximal operator of phi, ``prox(v, c)``.
    x_star, F_star :
        Optional reference minimizer and optimal value.
    phi_subgradient_gap : callable, optional
        ``gap(point, v)`` returning how far v is from the
        subdifferential of phi at ``point`` (0 means a valid
        subgradient).  Used as a postcondition check.

    Instances are immutable after construction (apart from attaching the
    reference solution once) and safe for concurrent read access.
    """

    dim: int
    f: Callable[[Array], float]
    grad_f: Callable[[Array], Array]
    L: float
    phi: Callable[[Array], float]
    prox: Callable[[Array, float], Array]
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    x_star: Array | None = None
    F_star: float | None = None
    phi_subgradient_gap: Callable[[Array, Array], float] | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        if not self.L > 0:
            raise ValueError("Lipschitz constant must be positive")

    def require_dim(self, x: Array) -> Array:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(
                f"expected vector of dimension {self.dim}, got shape {x.shape}"
            )
        return x

    def set_reference(self, x_star: Array, F_star: float) -> None:
        self.x_star = self.require_dim(x_star).copy()
        self.F_star = float(F_star)


@dataclass
class InitialCondition:
    """Starting point x0 together with a radius R >= ||x0 - x*||."""

    x0: Array
    R: float

    def __post_init__(self) -> None:
        self.x0 = np.asarray(self.x0, dtype=float)
        self.R = float(self.R)
        if not self.R > 0:
            raise ValueError("R must be positive")


def initial_from_reference(problem: CompositeProblem, x0: Array) -> InitialCondition:
    """Initial condition with R equal to the exact distance to the reference minimizer."""
    if problem.x_star is None:
        raise ValueError("problem has no reference minimizer; call solve_reference first")
    x0 = problem.require_dim(x0)
    r = float(np.linalg.norm(x0 - problem.x_star))
    return InitialCondition(x0=x0, R=max(r, 1e-15))


def _check_symmetric_psd(Q: Array, name: str) -> tuple[Array, float]:
    """Validate symmetry and positive semidefiniteness, return (sym(Q), largest eig)."""
    scale = max(1.0, float(np.abs(Q).max()))
    if float(np.abs(Q - Q.T).max()) > 1e-10 * scale:
        raise ValueError(f"{name} must be symmetric")
    Q = 0.5 * (Q + Q.T)
    eigs = np.linalg.eigvalsh(Q)
    if eigs[0] < -1e-10 * max(1.0, float(eigs[-1])):
        raise ValueError(f"{name} must be positive semidefinite")
    return Q, float(eigs[-1])


def make_quadratic_l1(Q: Array, b: Array, lam: float) -> CompositeProblem:
    """Quadratic plus l1 problem: f(x) = x'Qx/2 - b'x, phi(x) = lam*||x||_1.

    Parameters
    ----------
    Q : (d, d) symmetric positive semidefinite matrix.
    b : (d,) vector.
    lam : nonnegative l1 weight.

    The prox is the componentwise soft threshold at level lam/c and L is
    the exact largest eigenvalue of Q.
    """
    Q = np.asarray(Q, dtype=float)
    b = np.asarray(b, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError("Q must be a square matrix")
    d = Q.shape[0]
    if b.shape != (d,):
        raise ValueError("b must be a vector matching the dimension of Q")
    lam = float(lam)
    if lam < 0:
        raise ValueError("l1 weight must be nonnegative")
    Q, L = _check_symmetric_psd(Q, "Q")
    if L <= 0:
        raise ValueError("Q must have a positive largest eigenvalue")

    def f(x: Array) -> float:
        return float(0.5 * x @ (Q @ x) - b @ x)

    def grad_f(x: Array) -> Array:
        return Q @ x - b

    def phi(x: Array) -> float:
        return lam * float(np.abs(x).sum())

    def prox(v: Array, c: float) -> Array:
        return soft_threshold(v, lam / c)

    def subgradient_gap(point: Array, v: Array) -> float:
        # v in d(lam*||.||_1)(point): v_j = lam*sign(point_j) off zero,
        # |v_j| <= lam on zero components.
        pos = point > 0
        neg = point < 0
        gap = np.where(
            pos, np.abs(v - lam), np.where(neg, np.abs(v + lam), np.maximum(np.abs(v) - lam, 0.0))
        )
        return float(gap.max(initial=0.0))

    return CompositeProblem(
        dim=d,
        f=f,
        grad_f=grad_f,
        L=L,
        phi=phi,
        prox=prox,
        kind="quadratic_l1",
        params={"Q": Q, "b": b, "lam": lam},
        phi_subgradient_gap=subgradient_gap,
    )


def make_box_constrained_ls(A: Array, b: Array, lo: Array, hi: Array) -> CompositeProblem:
    """Box-constrained least squares: f(x) = ||Ax - b||^2/2, phi the box indicator.

    Bounds may contain ``-inf``/``inf``; the prox is the componentwise
    clamp onto [lo, hi] and L is the exact largest eigenvalue of A'A.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    m, d = A.shape
    if b.shape != (m,):
        raise ValueError("b must match the number of rows of A")
    lo = np.broadcast_to(np.asarray(lo, dtype=float), (d,)).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), (d,)).copy()
    if np.any(lo > hi):
        raise ValueError("box bounds require lo <= hi componentwise")
    AtA = A.T @ A
    L = float(np.linalg.eigvalsh(AtA)[-1])
    if L <= 0:
        raise ValueError("A must be nonzero")
    Atb = A.T @ b

    finite = np.concatenate([lo[np.isfinite(lo)], hi[np.isfinite(hi)]])
    feas_tol = 1e-12 * max(1.0, float(np.abs(finite).max()) if finite.size else 1.0)

    def f(x: Array) -> float:
        r = A @ x - b
        return float(0.5 * r @ r)

    def grad_f(x: Array) -> Array:
        return AtA @ x - Atb

    def phi(x: Array) -> float:
        if np.all(x >= lo - feas_tol) and np.all(x <= hi + feas_tol):
            return 0.0
        return math.inf

    def prox(v: Array, c: float) -> Array:
        return np.clip(v, lo, hi)

    def subgradient_gap(point: Array, v: Array) -> float:
        # Normal cone of the box: v_j >= 0 at the upper face, v_j <= 0 at
        # the lower face, v_j = 0 strictly inside.
        margin = 1e-9 * (1.0 + np.where(np.isfinite(hi), np.abs(hi), 0.0)
                         + np.where(np.isfinite(lo), np.abs(lo), 0.0))
        at_hi = point >= hi - margin
        at_lo = point <= lo + margin
        gap = np.where(
            at_hi & at_lo,
            0.0,
            np.where(at_hi, np.maximum(-v, 0.0), np.where(at_lo, np.maximum(v, 0.0), np.abs(v))),
        )
        return float(gap.max(initial=0.0))

    return CompositeProblem(
        dim=d,
        f=f,
        grad_f=grad_f,
        L=L,
        phi=phi,
        prox=prox,
        kind="box_ls",
        params={"A": A, "b": b, "lo": lo, "hi": hi},
        phi_subgradient_gap=subgradient_gap,
    )


def eval_F(problem: CompositeProblem, x: Array) -> float:
    """Evaluate F(x) = f(x) + phi(x); +inf when x is infeasible for an indicator phi."""
    x = problem.require_dim(x)
    return float(problem.f(x) + problem.phi(x))


def solve_reference(
    problem: CompositeProblem, tol: float = 1e-12, max_iter: int = 10**6
) -> tuple[Array, float]:
    """Solve to high accuracy with the plain prox-gradient fixed-point iteration.

    Iterates x <- prox(x - grad_f(x)/L, L) until the fixed-point residual
    ||x - prox_step(x)|| drops below ``tol`` (equivalently the composite
    gradient mapping norm is below tol*L), then stores the result on the
    problem as (x_star, F_star).  The iteration decreases F monotonically,
    which makes it a reliable parameter-free oracle.

    Raises
    ------
    RuntimeError
        If the iteration cap is exceeded before reaching ``tol``.
    """
    L = problem.L
    x = problem.prox(np.zeros(problem.dim), L)
    for _ in range(max_iter):
        nxt = problem.prox(x - problem.grad_f(x) / L, L)
        if float(np.linalg.norm(nxt - x)) <= tol:
            F_hat = eval_F(problem, nxt)
            problem.set_reference(nxt, F_hat)
            return nxt, F_hat
        x = nxt
    raise RuntimeError(
        f"reference solve did not reach tol={tol:g} within {max_iter} iterations"
    )


def _matrix_to_json(M: Array) -> list[list[float]]:
    return [[float(v) for v in row] for row in M]


def _bounds_to_json(v: Array) -> list[float | None]:
    return [float(x) if math.isfinite(x) else None for x in v]


def _bounds_from_json(vals: list, sign: float) -> Array:
    return np.array([sign * math.inf if v is None else float(v) for v in vals])


def problem_to_json(problem: CompositeProblem) -> dict:
    """Serialize a shipped problem instance to a JSON-compatible dict."""
    doc: dict = {"kind": problem.kind, "L": problem.L}
    p = problem.params
    if problem.kind == "quadratic_l1":
        doc["Q"] = _matrix_to_json(p["Q"])
        doc["b"] = [float(v) for v in p["b"]]
        doc["lam"] = p["lam"]
    elif problem.kind == "box_ls":
        doc["A"] = _matrix_to_json(p["A"])
        doc["b"] = [float(v) for v in p["b"]]
        doc["lo"] = _bounds_to_json(p["lo"])
        doc["hi"] = _bounds_to_json(p["hi"])
    else:
        raise ValueError(f"problem kind {problem.kind!r} is not serializable")
    if problem.x_star is not None:
        doc["x_star"] = [float(v) for v in problem.x_star]
        doc["F_star"] = problem.F_star
    return doc


def problem_from_json(doc: dict) -> CompositeProblem:
    """Rebuild a problem from its JSON document, revalidating L."""
    kind = doc.get("kind")
    if kind == "quadratic_l1":
        problem = make_quadratic_l1(np.array(doc["Q"], dtype=float),
                                    np.array(doc["b"], dtype=float), doc["lam"])
    elif kind == "box_ls":
        problem = make_box_constrained_ls(
            np.array(doc["A"], dtype=float),
            np.array(doc["b"], dtype=float),
            _bounds_from_json(doc["lo"], -1.0),
            _bounds_from_json(doc["hi"], +1.0),
        )
    else:
        raise ValueError(f"unknown problem kind {kind!r}")
    stored_L = float(doc["L"])
    if abs(stored_L - problem.L) > 1e-8 * max(1.0, problem.L):
        raise ValueError("stored Lipschitz constant disagrees with the matrix data")
    if "x_star" in doc:
        problem.set_reference(np.array(doc["x_star"], dtype=float), float(doc["F_star"]))
    return problem
