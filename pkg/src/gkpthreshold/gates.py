"""Gaussian gate models as ``out = M @ in + E @ squeezed``.

Quadrature order is ``(x1, y1, x2, y2, ...)``. ``E`` couples the outputs to
the squeezed quadratures of ancilla oscillators only; anti-squeezed
components never enter. Matrices hold exact entries (ints or
:class:`~gkpthreshold.core.QuadraticSurd`, object dtype) whenever the gate
parameters are exact, and floats otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy.optimize import brentq

from .core import QuadraticSurd, VarianceVector, as_surd

__all__ = [
    "GateModel",
    "RealisticSumParams",
    "symplectic_form",
    "is_symplectic",
    "ideal_sum",
    "realistic_sum",
    "sum_gain",
    "solve_unit_gain_reflectivity",
    "unit_gain_reflectivity_exact",
    "sum_noise_vectors",
    "ideal_cz",
    "hybrid_single_mode_error",
]


def symplectic_form(n_modes: int, exact: bool = False) -> np.ndarray:
    """Block-diagonal ``Omega`` with ``[[0, 1], [-1, 0]]`` per mode."""
    block = np.array([[0, 1], [-1, 0]], dtype=object if exact else float)
    omega = np.zeros((2 * n_modes, 2 * n_modes), dtype=block.dtype)
    for k in range(n_modes):
        omega[2 * k:2 * k + 2, 2 * k:2 * k + 2] = block
    return omega


def _is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object and all(
        isinstance(v, (QuadraticSurd, Rational)) for v in arr.flat
    )


def is_symplectic(m: np.ndarray, atol: float = 1e-12) -> bool:
    """Check ``M.T @ Omega @ M == Omega``.

    Exact matrices are compared with exact equality, float matrices to ``atol``.
    """
    m = np.asarray(m)
    n = m.shape[0] // 2
    if _is_exact(m):
        lhs = m.T @ symplectic_form(n, exact=True) @ m
        omega = symplectic_form(n, exact=True)
        return all(a == b for a, b in zip(lhs.flat, omega.flat))
    m = m.astype(float)
    return bool(np.allclose(m.T @ symplectic_form(n) @ m, symplectic_form(n), rtol=0, atol=atol))


@dataclass(frozen=True)
class GateModel:
    """Symplectic part ``m_matrix`` (2N x 2N) plus noise couplings ``e_matrix`` (2N x K).

    ``e_squared`` holds the elementwise squares of ``e_matrix``. It is kept
    separately because couplings like ``5**(-1/4)`` leave Q(sqrt 5) while
    their squares, the variance contributions, stay exact.
    """

    m_matrix: np.ndarray
    e_matrix: np.ndarray
    e_squared: np.ndarray
    name: str = ""

    @property
    def n_modes(self) -> int:
        return self.m_matrix.shape[0] // 2

    @property
    def n_ancillas(self) -> int:
        return self.e_matrix.shape[1]

    def is_exact(self) -> bool:
        return _is_exact(self.m_matrix)

    def m_float(self) -> np.ndarray:
        return _to_float(self.m_matrix)

    def e_float(self) -> np.ndarray:
        return _to_float(self.e_matrix)

    def apply(self, quadratures, ancillas=None) -> np.ndarray:
        """Map input quadratures (and optional ancilla quadratures) to outputs."""
        out = self.m_float() @ np.asarray(quadratures, dtype=float)
        if ancillas is not None and self.n_ancillas:
            out = out + self.e_float() @ np.asarray(ancillas, dtype=float)
        return out

    def without_noise(self) -> GateModel:
        """Zero-noise limit: the same symplectic part with ancillas removed."""
        dim = self.m_matrix.shape[0]
        return GateModel(self.m_matrix, np.zeros((dim, 0)), np.zeros((dim, 0)), self.name)

    def noise_vectors(self) -> list[VarianceVector]:
        """Per-mode added variance, in units of the (shared) squeezed variance.

        Only available when ``e_squared`` is exact.
        """
        sq = self.e_squared
        if self.n_ancillas == 0:
            return [VarianceVector(0, 0) for _ in range(self.n_modes)]
        if not _is_exact(sq):
            raise ValueError("noise vectors are exact only for exact gate parameters")
        rows = [sum(sq[i], QuadraticSurd(0)) for i in range(sq.shape[0])]
        return [VarianceVector(rows[2 * k], rows[2 * k + 1]) for k in range(self.n_modes)]

    def output_variances(self, squeezed_variance: float) -> np.ndarray:
        """Float variance added to each output quadrature."""
        return _to_float(self.e_squared).sum(axis=1) * squeezed_variance


def _to_float(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    return arr.astype(float)


def _matrix(rows, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                out[i, j] = v
        return out
    return np.array([[float(v) for v in row] for row in rows], dtype=float)


def _sum_matrix(g, exact: bool) -> np.ndarray:
    # x1' = x1, y1' = y1 + g y2, x2' = x2 - g x1, y2' = y2
    return _matrix(
        [
            [1, 0, 0, 0],
            [0, 1, 0, g],
            [-g, 0, 1, 0],
            [0, 0, 0, 1],
        ],
        exact,
    )


def ideal_sum(g=1) -> GateModel:
    """Noise-free ``SUM(g)``.

    ``y2`` is left untouched (``y2' = y2``); this is the symplectic SUM gate
    and agrees with the beamsplitter realisation below.
    """
    exact = isinstance(g, (QuadraticSurd, Rational)) and not isinstance(g, bool)
    if not exact and not math.isfinite(float(g)):
        raise ValueError(f"gain must be finite, got {g}")
    empty = np.zeros((4, 0))
    return GateModel(_sum_matrix(g, exact), empty, empty, name=f"SUM({g})")


@dataclass(frozen=True)
class RealisticSumParams:
    """Beamsplitter reflectivity ``R`` of the optical SUM scheme, ``0 < R < 1``.

    ``reflectivity_r`` may be a float or an exact :class:`QuadraticSurd`.
    """

    reflectivity_r: float | QuadraticSurd

    def __post_init__(self):
        r = self.reflectivity_r
        if not (0 < r < 1):
            raise ValueError(f"reflectivity must lie in (0, 1), got {r}")

    @property
    def exact(self) -> bool:
        return isinstance(self.reflectivity_r, (QuadraticSurd, Rational))

    def gain(self):
        return sum_gain(self.reflectivity_r)


def _exact_sqrt_or_float(s: QuadraticSurd):
    try:
        return s.sqrt()
    except ValueError:
        return math.sqrt(s.to_float())


def sum_gain(r):
    """Gain ``(1 - R)/sqrt(R)`` of the optical SUM; exact when possible."""
    if isinstance(r, (QuadraticSurd, Rational)):
        r = as_surd(r)
        if not (0 < r < 1):
            raise ValueError(f"reflectivity must lie in (0, 1), got {r}")
        g2 = (1 - r) ** 2 / r
        return _exact_sqrt_or_float(g2)
    r = float(r)
    if not (0.0 < r < 1.0):
        raise ValueError(f"reflectivity must lie in (0, 1), got {r}")
    return (1.0 - r) / math.sqrt(r)


def realistic_sum(p: RealisticSumParams | float | QuadraticSurd) -> GateModel:
    """Optical SUM with two squeezed ancillas, columns ``(x_s1, y_s2)``.

    ::

        x1' = x1 - c1 x_s1
        x2' = x2 - g x1 - c2 x_s1
        y1' = y1 + g y2 + c2 y_s2
        y2' = y2 - c1 y_s2

    with ``g = (1-R)/sqrt(R)``, ``c1 = sqrt((1-R)/(1+R))`` and
    ``c2 = sqrt(R(1-R)/(1+R))``.
    """
    if not isinstance(p, RealisticSumParams):
        p = RealisticSumParams(p)
    r = p.reflectivity_r
    if p.exact:
        r = as_surd(r)
        c1_sq = (1 - r) / (1 + r)
        c2_sq = r * (1 - r) / (1 + r)
        c1 = _exact_sqrt_or_float(c1_sq)
        c2 = _exact_sqrt_or_float(c2_sq)
        g = sum_gain(r)
    else:
        r = float(r)
        c1_sq = (1 - r) / (1 + r)
        c2_sq = r * (1 - r) / (1 + r)
        c1, c2 = math.sqrt(c1_sq), math.sqrt(c2_sq)
        g = sum_gain(r)

    exact_m = isinstance(g, QuadraticSurd)
    exact_e = isinstance(c1, QuadraticSurd) and isinstance(c2, QuadraticSurd)
    zero = QuadraticSurd(0) if p.exact else 0.0
    e = _matrix([[-c1, 0], [0, c2], [-c2, 0], [0, -c1]], exact_e)
    e_sq = _matrix(
        [[c1_sq, zero], [zero, c2_sq], [c2_sq, zero], [zero, c1_sq]],
        p.exact,
    )
    return GateModel(_sum_matrix(g, exact_m), e, e_sq, name=f"realistic SUM(R={r})")


def unit_gain_reflectivity_exact() -> QuadraticSurd:
    """``R = (3 - sqrt5)/2``, the root of ``(1 - R)^2 = R`` in (0, 1)."""
    return QuadraticSurd(Fraction(3, 2), Fraction(-1, 2))


def solve_unit_gain_reflectivity() -> float:
    """Numerically solve ``(1 - R)/sqrt(R) = 1`` on (0, 1)."""
    return brentq(lambda r: sum_gain(r) - 1.0, 1e-12, 1 - 1e-12, xtol=1e-17, rtol=1e-15)


def sum_noise_vectors() -> tuple[VarianceVector, VarianceVector]:
    """Added variance on (control, target) of the unit-gain optical SUM.

    Both ancillas share one squeezed variance, so the result is in units of
    that variance: ``(1/sqrt5, (3-sqrt5)/(2 sqrt5))`` and its swap.
    """
    first, second = realistic_sum(unit_gain_reflectivity_exact()).noise_vectors()
    return first, second


def ideal_cz() -> GateModel:
    """``CZ``: ``y1' = y1 + x2``, ``y2' = y2 + x1``."""
    m = _matrix(
        [
            [1, 0, 0, 0],
            [0, 1, 1, 0],
            [0, 0, 1, 0],
            [1, 0, 0, 1],
        ],
        exact=True,
    )
    empty = np.zeros((4, 0))
    return GateModel(m, empty, empty, name="CZ")


def hybrid_single_mode_error() -> VarianceVector:
    """Error vector ``(2, 2)`` of a single-mode gate on a two-node cluster plus phase shifter.

    Also used for each interferometer arm of the hybrid CZ.
    """
    return VarianceVector(2, 2)

