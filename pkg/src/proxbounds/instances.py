"""Deterministic random instances driven by an explicitly documented generator.

Instances are produced from a 64-bit seed so that a run can be
reproduced exactly; the generator below is fully specified (not a
library implementation detail), and generated problems can additionally
travel as JSON documents, so other implementations can consume the data
without re-deriving the stream.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["SplitMix64", "child_seed", "random_lasso", "random_box"]

Array = np.ndarray

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream: state += 0x9E3779B97F4A7C15, output finalizes with
    two xor-shift multiplies (0xBF58476D1CE4E5B9, 0x94D049BB133111EB) and a
    final 31-bit xor-shift.  Uniform doubles use the top 53 bits."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """One double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniforms(self, n: int) -> Array:
        return np.array([self.uniform() for _ in range(n)])

    def symmetric(self, n: int) -> Array:
        """n draws uniform in [-1, 1)."""
        return 2.0 * self.uniforms(n) - 1.0

    def matrix(self, rows: int, cols: int) -> Array:
        """Row-major matrix of draws uniform in [-1, 1)."""
        return self.symmetric(rows * cols).reshape(rows, cols)


def child_seed(seed: int, index: int) -> int:
    """Seed for the ``index``-th derived stream: the (index+1)-th output of
    the stream seeded with ``seed``."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    rng = SplitMix64(seed)
    out = 0
    for _ in range(index + 1):
        out = rng.next_u64()
    return out


def random_lasso(seed: int, dim: int):
    """Random quadratic-plus-l1 instance and a starting point.

    Draw order from the stream: a dim x dim matrix A (entries in
    [-1, 1), scaled by 1/sqrt(dim)), then b (dim entries in [-1, 1)),
    then the l1 weight lam = 0.1 + 0.2 u, then x0 (dim entries in
    [-1, 1)).  The quadratic matrix is Q = A'A + 0.1 I, which keeps the
    instance strongly convex so the reference solve converges quickly.

    Returns (problem, x0); the reference solution is not attached.
    """
    from .problems import make_quadratic_l1

    if dim < 1:
        raise ValueError("dimension must be a positive integer")
    rng = SplitMix64(seed)
    A = rng.matrix(dim, dim) / math.sqrt(dim)
    Q = A.T @ A + 0.1 * np.eye(dim)
    b = rng.symmetric(dim)
    lam = 0.1 + 0.2 * rng.uniform()
    x0 = rng.symmetric(dim)
    return make_quadratic_l1(Q, b, lam), x0


def random_box(seed: int, dim: int):
    """Random box-constrained least squares instance and a feasible start.

    Draw order: two dim x dim matrices (orthogonalized by QR to form the
    left/right factors), dim singular values in [0.4, 1), b (dim entries
    in [-1, 1)), box centers in [-0.5, 0.5), half widths in [0.2, 1),
    and x0 sampled uniformly inside the box.  The construction keeps
    A'A well conditioned so the reference solve is fast.

    Returns (problem, x0); the reference solution is not attached.
    """
    from .problems import make_box_constrained_ls

    if dim < 1:
        raise ValueError("dimension must be a positive integer")
    rng = SplitMix64(seed)
    Q1, _ = np.linalg.qr(rng.matrix(dim, dim))
    Q2, _ = np.linalg.qr(rng.matrix(dim, dim))
    s = 0.4 + 0.6 * rng.uniforms(dim)
    A = (Q1 * s) @ Q2.T
    b = rng.symmetric(dim)
    center = 0.5 * rng.symmetric(dim)
    width = 0.2 + 0.8 * rng.uniforms(dim)
    lo = center - width
    hi = center + width
    x0 = lo + rng.uniforms(dim) * (hi - lo)
    return make_box_constrained_ls(A, b, lo, hi), x0
