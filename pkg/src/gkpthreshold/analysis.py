"""Correction/error probabilities and the squeezing-threshold solver.

``v`` everywhere is the squeezed-oscillator variance. Error probabilities
are formed from ``erfc`` directly, so values around 1e-6 keep full relative
precision instead of being the difference of two numbers close to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from .core import db_from_variance, erf_eval, erfc_eval
from .gkp import SQRT_PI
from .ledger import GOLDEN

__all__ = [
    "FAULT_TOLERANCE_TARGET",
    "SingleMode",
    "CZ",
    "ThresholdResult",
    "SweepResult",
    "p_corr",
    "q_corr",
    "p_corr_x",
    "p_corr_y",
    "p_err_single",
    "p_err_cz",
    "p_err",
    "solve_threshold",
    "contour_b",
    "sweep_error_surface",
]

FAULT_TOLERANCE_TARGET = 1e-6

_GOLDEN = float(GOLDEN)
_SQRT5_PLUS_1 = math.sqrt(5.0) + 1.0
# decoder window half-width sqrt(pi)/2 divided by sqrt(2)
_Z_SCALE = SQRT_PI / (2.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class SingleMode:
    """Single-mode gate with computation-error coefficients ``(a, b)``."""

    a: float = 2.0
    b: float = 2.0
    kind = "single_mode"

    def __post_init__(self):
        if not (self.a >= 0 and self.b >= 0):
            raise ValueError(f"a, b must be >= 0, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class CZ:
    """Hybrid CZ: two single-mode gates, one per interferometer arm."""

    arm_a: float = 2.0
    arm_b: float = 2.0
    kind = "cz"


Gate = Union[SingleMode, CZ]


def _check_positive(name, value):
    arr = np.asarray(value, dtype=float)
    if not np.all(arr > 0):
        raise ValueError(f"{name} must be positive, got {value}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def q_corr(sigma):
    """Failure probability ``1 - p_corr(sigma)``, computed as ``erfc``."""
    sigma = _check_positive("sigma", sigma)
    return _out(erfc_eval(_Z_SCALE / sigma))


def p_corr(sigma):
    """Probability that a N(0, sigma^2) displacement lies in ``[-sqrt(pi)/2, sqrt(pi)/2]``."""
    sigma = _check_positive("sigma", sigma)
    return _out(erf_eval(_Z_SCALE / sigma))


def _sigma_x(a, v):
    a = np.asarray(a, dtype=float)
    if np.any(a < 0):
        raise ValueError(f"a must be >= 0, got {a}")
    return np.sqrt(_check_positive("v", v) * (a + _GOLDEN))


def _sigma_y(b, v):
    b = np.asarray(b, dtype=float)
    if np.any(b < 0):
        raise ValueError(f"b must be >= 0, got {b}")
    return np.sqrt(_check_positive("v", v) * (b + _SQRT5_PLUS_1))


def p_corr_x(a, v):
    return p_corr(_sigma_x(a, v))


def p_corr_y(b, v):
    return p_corr(_sigma_y(b, v))


def p_err_single(a, b, v):
    """``1 - p_corr_x(a, v) p_corr_y(b, v)``. Broadcasts over arrays."""
    qx = np.asarray(q_corr(_sigma_x(a, v)))
    qy = np.asarray(q_corr(_sigma_y(b, v)))
    return _out(qx + qy - qx * qy)


def p_err_cz(v, arm_a=2.0, arm_b=2.0):
    """``1 - (p_corr_x p_corr_y)^2`` for the two hybrid arms."""
    q = np.asarray(p_err_single(arm_a, arm_b, v))
    return _out(q * (2.0 - q))


def p_err(gate: Gate, v):
    if isinstance(gate, SingleMode):
        return p_err_single(gate.a, gate.b, v)
    if isinstance(gate, CZ):
        return p_err_cz(v, gate.arm_a, gate.arm_b)
    raise TypeError(f"unknown gate {gate!r}")


@dataclass(frozen=True)
class ThresholdResult:
    variance_threshold: float
    db_threshold: float
    target_error: float
    gate_kind: str
    p_err_at_threshold: float

    def to_json(self) -> dict:
        return {
            "variance_threshold": self.variance_threshold,
            "db_threshold": self.db_threshold,
            "target_error": self.target_error,
            "gate_kind": self.gate_kind,
            "p_err_at_threshold": self.p_err_at_threshold,
        }


def _bracket(f, lo=1e-3, hi=1e-2, limit=1e12):
    """Expand ``[lo, hi]`` geometrically until ``f(lo) < 0 < f(hi)``."""
    while f(lo) >= 0:
        lo /= 10.0
        if lo < 1e-300:
            raise ValueError("could not bracket the root from below")
    while f(hi) <= 0:
        hi *= 10.0
        if hi > limit:
            raise ValueError("could not bracket the root from above")
    return lo, hi


def solve_threshold(gate: Gate, target: float = FAULT_TOLERANCE_TARGET) -> ThresholdResult:
    """Largest squeezed variance with ``P_err <= target``.

    ``P_err`` is strictly increasing in ``v``, so the root is unique; it is
    bracketed geometrically and refined with Brent's method.
    """
    if not (0.0 < target < 1.0):
        raise ValueError(f"target must lie in (0, 1), got {target}")

    def f(v):
        return p_err(gate, v) - target

    lo, hi = _bracket(f)
    v_star = brentq(f, lo, hi, xtol=1e-300, rtol=1e-13, maxiter=500)
    return ThresholdResult(
        variance_threshold=v_star,
        db_threshold=db_from_variance(v_star),
        target_error=target,
        gate_kind=gate.kind,
        p_err_at_threshold=p_err(gate, v_star),
    )


def contour_b(a: float, v: float, target: float = FAULT_TOLERANCE_TARGET) -> float:
    """``b`` on the level set ``P_err(a, b, v) = target``; NaN if even ``b = 0`` fails."""
    def f(b):
        return p_err_single(a, b, v) - target

    if f(0.0) >= 0:
        return math.nan
    hi = 1.0
    while f(hi) <= 0:
        hi *= 2.0
        if hi > 1e15:
            return math.inf
    return brentq(f, 0.0, hi, xtol=1e-14, rtol=1e-13)


@dataclass(frozen=True)
class SweepResult:
    """``surface[i, j, k] = P_err(a[j], b[k], v[i])``; ``contours[i, j]`` is the level-set ``b``."""

    a_values: np.ndarray
    b_values: np.ndarray
    v_values: np.ndarray
    surface: np.ndarray
    contours: np.ndarray
    target: float

    @property
    def db_values(self) -> np.ndarray:
        return np.array([db_from_variance(v) for v in self.v_values])

    def contour_area(self, i: int) -> float:
        """Area under the level set for ``v_values[i]`` over the sampled a range."""
        b = np.nan_to_num(self.contours[i], nan=0.0)
        return float(np.trapezoid(b, self.a_values))


def sweep_error_surface(a_values, b_values, v_values, target: float = FAULT_TOLERANCE_TARGET) -> SweepResult:
    a = np.asarray(a_values, dtype=float)
    b = np.asarray(b_values, dtype=float)
    vs = np.asarray(v_values, dtype=float)
    if a.size == 0 or b.size == 0 or vs.size == 0:
        raise ValueError("a, b and v ranges must be non-empty")
    _check_positive("v", vs)

    surface = np.stack([p_err_single(a[:, None], b[None, :], v) for v in vs])
    contours = np.array([[contour_b(ai, v, target) for ai in a] for v in vs])
    return SweepResult(a, b, vs, np.asarray(surface), contours, target)
