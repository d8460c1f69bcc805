"""Momentum parameter sequences t_i and step-coefficient constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TSequence",
    "TSequenceReport",
    "StepSchedule",
    "fista_t_sequence",
    "linear_t_sequence",
    "opg_t_sequence",
    "custom_t_sequence",
    "validate_t_sequence",
    "step_coefficients",
    "step_coefficients_recursive",
    "t_sequence_to_json",
    "t_sequence_from_json",
]

Array = np.ndarray

#: Admissible roundings for the switch point of the opg sequence.
M_ROUNDINGS = ("floor", "ceil")


@dataclass
class TSequence:
    """Momentum parameters t_0..t_{N-1} with partial sums T_i = sum_{l<=i} t_l.

    A sequence is admissible when t_0 = 1, every t_i is positive and
    t_i^2 <= T_i.  ``values`` and ``sums`` are parallel arrays; ``label``
    records how the sequence was built.
    """

    values: Array
    label: str
    sums: Array = field(init=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("a t-sequence needs at least one value")
        self.sums = np.cumsum(self.values)

    @property
    def horizon(self) -> int:
        return int(self.values.size)


@dataclass
class TSequenceReport:
    """Outcome of validating a t-sequence; violations are (index, message) pairs."""

    ok: bool
    violations: list[tuple[int, str]]


@dataclass
class StepSchedule:
    """Lower-triangular step coefficients h[r, k] for rows r = 1..N-1, k < r.

    Row r holds the weights applied to the prox-step differences when
    forming the r-th momentum point; ``coeffs`` is an (N, N) array whose
    row 0 and upper triangle are zero.
    """

    horizon: int
    coeffs: Array

    def row(self, r: int) -> Array:
        if not 1 <= r <= self.horizon - 1:
            raise IndexError(f"row {r} outside 1..{self.horizon - 1}")
        return self.coeffs[r, :r]


def fista_t_sequence(n: int) -> TSequence:
    """t_0 = 1 and t_{i+1} = (1 + sqrt(1 + 4 t_i^2))/2.

    This choice satisfies t_i^2 = T_i exactly and t_i >= (i + 2)/2.
    """
    if n < 1:
        raise ValueError("horizon must be a positive integer")
    t = np.empty(n)
    t[0] = 1.0
    for i in range(1, n):
        t[i] = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t[i - 1] ** 2))
    return TSequence(values=t, label="fista")


def linear_t_sequence(n: int, a: float) -> TSequence:
    """t_i = (i + a)/a for a >= 2, the linearly growing momentum family.

    The partial sums are T_i = (i + 1)(i + 2a)/(2a), so the slack
    T_i - t_i^2 = ((a - 2) i^2 + a(2a - 3) i) / (2 a^2) is nonnegative
    exactly when a >= 2; smaller a is rejected.
    """
    if n < 1:
        raise ValueError("horizon must be a positive integer")
    a = float(a)
    if a < 2:
        raise ValueError("linear sequences need a >= 2 to stay admissible")
    t = (np.arange(n) + a) / a
    return TSequence(values=t, label=f"linear({a:g})")


def opg_t_sequence(n: int, rounding: str = "floor") -> TSequence:
    """Momentum sequence optimized for the gradient-mapping bound.

    Follows the fista recursion for i < m and then decreases linearly,
    t_i = (N - i + 1)/2 for i >= m, with the switch point m = floor(N/2)
    by default (``rounding="ceil"`` selects m = ceil(N/2) instead; the
    floor choice maximizes the mapping-bound denominator).
    """
    if n < 1:
        raise ValueError("horizon must be a positive integer")
    if rounding not in M_ROUNDINGS:
        raise ValueError(f"rounding must be one of {M_ROUNDINGS}")
    m = n // 2 if rounding == "floor" else (n + 1) // 2
    t = np.empty(n)
    t[0] = 1.0
    for i in range(1, n):
        if i < m:
            t[i] = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t[i - 1] ** 2))
        else:
            t[i] = 0.5 * (n - i + 1)
    seq = TSequence(values=t, label=f"opg({n})")
    report = validate_t_sequence(seq)
    if not report.ok:
        raise AssertionError(f"opg sequence construction produced violations: {report.violations}")
    return seq


def custom_t_sequence(values, label: str = "custom") -> TSequence:
    """Wrap raw values as a t-sequence without validating them."""
    return TSequence(values=np.asarray(values, dtype=float), label=label)


def validate_t_sequence(t: TSequence, tol: float = 1e-12) -> TSequenceReport:
    """Report every index violating t_0 = 1, t_i > 0 or t_i^2 <= T_i."""
    violations: list[tuple[int, str]] = []
    tv, Ts = t.values, t.sums
    if abs(tv[0] - 1.0) > tol:
        violations.append((0, f"t_0 = {tv[0]:g} but must equal 1"))
    for i in range(t.horizon):
        if not tv[i] > 0:
            violations.append((i, f"t_{i} = {tv[i]:g} is not positive"))
        elif tv[i] ** 2 > Ts[i] + tol * max(1.0, Ts[i]):
            violations.append((i, f"t_{i}^2 = {tv[i] ** 2:g} exceeds T_{i} = {Ts[i]:g}"))
    return TSequenceReport(ok=not violations, violations=violations)


def _require_valid(t: TSequence) -> None:
    report = validate_t_sequence(t)
    if not report.ok:
        raise ValueError(f"invalid t-sequence {t.label!r}: {report.violations}")


def step_coefficients(t: TSequence) -> StepSchedule:
    """Step coefficients equivalent to the momentum recursion for ``t``.

    Row r = i + 1 is
        h[r, k] = (t_r / T_r) (t_k - sum_{j=k+1}^{i} h[j, k])   for k < i,
        h[r, i] = 1 + (t_i - 1) t_r / T_r,
    evaluated with per-column prefix sums so construction is O(N^2).
    """
    _require_valid(t)
    n = t.horizon
    tv, Ts = t.values, t.sums
    H = np.zeros((n, n))
    colsum = np.zeros(n)
    for i in range(n - 1):
        r = i + 1
        if i >= 1:
            H[r, :i] = (tv[r] / Ts[r]) * (tv[:i] - colsum[:i])
        H[r, i] = 1.0 + (tv[i] - 1.0) * tv[r] / Ts[r]
        colsum[:r] += H[r, :r]
    return StepSchedule(horizon=n, coeffs=H)


def step_coefficients_recursive(t: TSequence) -> StepSchedule:
    """Same coefficients as :func:`step_coefficients`, built row from row.

    Each new row rescales the previous one:
        h[r, k]     = c_i h[i, k]          for k <= i - 2,
        h[r, i - 1] = c_i (h[i, i - 1] - 1),
        h[r, i]     = 1 + (t_i - 1) t_r / T_r,
    with c_i = (T_i - t_i) t_r / (t_i T_r) and r = i + 1.
    """
    _require_valid(t)
    n = t.horizon
    tv, Ts = t.values, t.sums
    H = np.zeros((n, n))
    if n >= 2:
        H[1, 0] = 1.0 + (tv[0] - 1.0) * tv[1] / Ts[1]
    for i in range(1, n - 1):
        r = i + 1
        c = (Ts[i] - tv[i]) * tv[r] / (tv[i] * Ts[r])
        if i >= 2:
            H[r, : i - 1] = c * H[i, : i - 1]
        H[r, i - 1] = c * (H[i, i - 1] - 1.0)
        H[r, i] = 1.0 + (tv[i] - 1.0) * tv[r] / Ts[r]
    return StepSchedule(horizon=n, coeffs=H)


def t_sequence_to_json(t: TSequence) -> dict:
    return {"label": t.label, "values": [float(v) for v in t.values]}


def t_sequence_from_json(doc: dict) -> TSequence:
    return custom_t_sequence(doc["values"], label=doc.get("label", "custom"))
