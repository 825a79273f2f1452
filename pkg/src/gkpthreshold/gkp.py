"""GKP codewords: comb geometry, correctable ranges and the modular decoder."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SQRT_PI",
    "GkpParams",
    "CorrectableRange",
    "correctable_range",
    "admissible_gains",
    "modular_decode",
    "comb_truncation",
    "gkp_density",
]

SQRT_PI = math.sqrt(math.pi)

# dropped envelope weight per truncated peak
_TRUNCATION_WEIGHT = 1e-12


@dataclass(frozen=True)
class GkpParams:
    """Finite GKP comb.

    Parameters
    ----------
    alpha : float
        Comb spacing. ``sqrt(pi)`` makes the x and y correctable ranges equal.
    delta_peak : float
        Variance of a single peak of the position density.
    envelope_ae : float, optional
        Inverse envelope width. Defaults to ``sqrt(delta_peak)``.
    """

    alpha: float = SQRT_PI
    delta_peak: float = 1e-2
    envelope_ae: float = field(default=None)

    def __post_init__(self):
        if self.envelope_ae is None:
            object.__setattr__(self, "envelope_ae", math.sqrt(self.delta_peak))
        for name in ("alpha", "delta_peak", "envelope_ae"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class CorrectableRange:
    x_half_width: float
    y_half_width: float

    @property
    def product(self) -> float:
        return self.x_half_width * self.y_half_width


def correctable_range(p: GkpParams | float) -> CorrectableRange:
    """Largest x and y displacements the decoder undoes: ``alpha/2`` and ``pi/(2 alpha)``."""
    alpha = p.alpha if isinstance(p, GkpParams) else float(p)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return CorrectableRange(alpha / 2, math.pi / (2 * alpha))


def admissible_gains(alpha: float, beta: float, rel_tol: float = 1e-12) -> frozenset:
    """SUM gains ``G`` for which ``alpha (n + m G) mod beta`` vanishes for all integers.

    ``alpha n mod beta = 0`` for every ``n`` forces ``alpha = beta`` (spacings
    are positive), and then ``alpha G m mod beta = 0`` forces ``G = +-1``.
    ``rel_tol`` absorbs representation error when the spacings are floats.
    """
    if not (alpha > 0 and beta > 0):
        raise ValueError("comb spacings must be positive")
    if math.isclose(alpha, beta, rel_tol=rel_tol, abs_tol=0.0):
        return frozenset({1, -1})
    return frozenset()


def modular_decode(x_measured, alpha: float = SQRT_PI):
    """Reduce a syndrome to its representative in ``[-alpha/2, alpha/2)``.

    This is the correction displacement applied to the data oscillator.
    Works elementwise on arrays.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    x = np.asarray(x_measured, dtype=float)
    half = alpha / 2
    r = x - alpha * np.floor(x / alpha + 0.5)
    # floor() of a rounded quotient can land one period off at the edges
    r = np.where(r >= half, r - alpha, r)
    r = np.where(r < -half, r + alpha, r)
    return float(r) if r.ndim == 0 else r


def comb_truncation(p: GkpParams) -> int:
    """Largest peak index ``|k|`` whose envelope weight is above 1e-12."""
    kmax = math.sqrt(-2.0 * math.log(_TRUNCATION_WEIGHT)) / (p.envelope_ae * p.alpha)
    return int(math.ceil(kmax)) + 1


def _peak_indices(p: GkpParams, word: str) -> np.ndarray:
    kmax = comb_truncation(p)
    if word in ("zero", "0", 0):
        s_max = kmax // 2 + 1
        return 2 * np.arange(-s_max, s_max + 1)
    if word in ("one", "1", 1):
        s_max = kmax // 2 + 1
        return 2 * np.arange(-s_max - 1, s_max + 1) + 1
    raise ValueError(f"word must be 'zero' or 'one', got {word!r}")


def gkp_density(p: GkpParams, word, grid) -> np.ndarray:
    """Position density ``|<x|word>|^2`` of a finite GKP codeword on ``grid``.

    The amplitude is a sum of Gaussian peaks at ``k alpha`` (``k`` even for
    ``zero``, odd for ``one``) weighted by ``exp(-ae^2 (k alpha)^2 / 2)``.
    Each peak's own density is normal with variance ``delta_peak``. The
    normalisation uses the closed-form Gaussian overlaps of all peak pairs,
    so it does not depend on the grid.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")

    k = _peak_indices(p, word)
    centers = k * p.alpha
    weights = np.exp(-0.5 * p.envelope_ae**2 * centers**2)
    keep = weights > 0
    centers, weights = centers[keep], weights[keep]

    var = p.delta_peak
    # <phi_j|phi_k> for amplitudes exp(-(x-c)^2/(4 var)) normalised individually
    gaps = centers[:, None] - centers[None, :]
    norm = float(weights @ np.exp(-(gaps**2) / (8 * var)) @ weights)

    amp = np.zeros_like(grid)
    pref = (2 * math.pi * var) ** -0.25
    # only peaks within reach of the grid contribute above underflow
    reach = 40.0 * math.sqrt(var)
    lo, hi = grid[0] - reach, grid[-1] + reach
    for c, w in zip(centers, weights):
        if lo <= c <= hi:
            amp += w * pref * np.exp(-((grid - c) ** 2) / (4 * var))
    return amp**2 / norm
