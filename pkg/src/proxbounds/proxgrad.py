"""Proximal gradient kernel: the prox step, the composite gradient mapping, descent facts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .problems import CompositeProblem, eval_F

__all__ = [
    "MappingEval",
    "prox_grad_step",
    "composite_gradient_mapping",
    "subgradient_at_prox",
    "check_descent",
]

Array = np.ndarray


@dataclass
class MappingEval:
    """Prox step at x together with the composite gradient mapping -L(p - x)."""

    x: Array
    prox_point: Array
    mapping: Array
    norm: float


def prox_grad_step(problem: CompositeProblem, y: Array, c: float) -> Array:
    """One proximal gradient step with constant c: prox(y - grad_f(y)/c, c).

    This is the minimizer of the quadratic surrogate
    f(y) + <x - y, grad_f(y)> + (c/2)||x - y||^2 + phi(x).
    Use c = L for the standard step; other values of c support variants
    that run the step with a modified constant.
    """
    if not c > 0:
        raise ValueError("prox constant c must be positive")
    y = problem.require_dim(y)
    return problem.prox(y - problem.grad_f(y) / c, c)


def composite_gradient_mapping(problem: CompositeProblem, x: Array) -> MappingEval:
    """Composite gradient mapping -L(p - x) with p the prox step at x.

    Reduces to grad_f(x) when phi = 0, and vanishes exactly at minimizers
    of F.
    """
    x = problem.require_dim(x)
    p = prox_grad_step(problem, x, problem.L)
    g = problem.L * (x - p)
    return MappingEval(x=x, prox_point=p, mapping=g, norm=float(np.linalg.norm(g)))


def subgradient_at_prox(problem: CompositeProblem, x: Array, tol: float = 1e-8) -> Array:
    """Subgradient of F at the prox point p of x.

    The mapping decomposes as grad_f(x) + phi_sub with
    phi_sub in the subdifferential of phi at p; the returned vector is
    grad_f(p) + phi_sub, a member of the subdifferential of F at p.

    Raises
    ------
    RuntimeError
        If the extracted phi_sub fails the problem's subdifferential
        membership check (this signals an implementation bug, not a user
        error).
    """
    me = composite_gradient_mapping(problem, x)
    phi_sub = me.mapping - problem.grad_f(me.x)
    if problem.phi_subgradient_gap is not None:
        gap = problem.phi_subgradient_gap(me.prox_point, phi_sub)
        scale = 1.0 + problem.L * (1.0 + float(np.linalg.norm(me.x)))
        if gap > tol * scale:
            raise RuntimeError(
                f"extracted phi subgradient fails the membership check (gap={gap:g})"
            )
    return problem.grad_f(me.prox_point) + phi_sub


def check_descent(problem: CompositeProblem, x: Array) -> tuple[float, float]:
    """Sufficient-decrease pair for the prox step at x.

    Returns (F(x) - F(p), ||mapping||^2 / (2L)); one prox step always
    decreases the cost by at least the second quantity, so
    lhs >= rhs - 1e-10 * max(1, |F(x)|) must hold.
    """
    Fx = eval_F(problem, x)
    if not math.isfinite(Fx):
        raise ValueError("F(x) must be finite")
    me = composite_gradient_mapping(problem, x)
    lhs = Fx - eval_F(problem, me.prox_point)
    rhs = me.norm**2 / (2.0 * problem.L)
    return lhs, rhs
