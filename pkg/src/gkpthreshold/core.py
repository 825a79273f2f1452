"""Shared numerics: exact arithmetic in Q(sqrt 5), squeezing units and erf.

All variance bookkeeping in this package is done with :class:`QuadraticSurd`
coefficients so that identities like ``1/sqrt5 + 3/(2 sqrt5) + 1/2 ==
(sqrt5 + 1)/2`` are exact equalities rather than float comparisons.

Quadrature convention: ``[x, y] = i`` with vacuum variance ``1/2``, so the
squeezing of an oscillator with variance ``v`` is ``10 log10(2 v)`` dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

import numpy as np
from scipy import special

__all__ = [
    "QuadraticSurd",
    "SQRT5",
    "VarianceVector",
    "as_surd",
    "db_from_variance",
    "variance_from_db",
    "erf_eval",
    "erfc_eval",
]

SurdLike = Union["QuadraticSurd", int, Fraction]

_SQRT5_FLOAT = math.sqrt(5.0)


@total_ordering
class QuadraticSurd:
    """Exact number ``p + q*sqrt(5)`` with rational ``p`` and ``q``.

    Instances are immutable and hashable. Integers and :class:`fractions.Fraction`
    values mix freely in arithmetic and comparisons.

    Examples
    --------
    >>> r5 = QuadraticSurd(0, 1)
    >>> r5 * r5
    QuadraticSurd(5, 0)
    >>> (3 - r5) / 2
    QuadraticSurd(3/2, -1/2)
    """

    __slots__ = ("_p", "_q")

    def __init__(self, rational_part: Rational | int = 0, surd_part: Rational | int = 0):
        self._p = Fraction(rational_part)
        self._q = Fraction(surd_part)

    @property
    def rational_part(self) -> Fraction:
        return self._p

    @property
    def surd_part(self) -> Fraction:
        return self._q

    def __repr__(self) -> str:
        return f"QuadraticSurd({self._p}, {self._q})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self._p)
        surd = "√5" if abs(self._q) == 1 else f"{abs(self._q)}√5"
        if self._p == 0:
            return surd if self._q > 0 else f"-{surd}"
        return f"{self._p} {'+' if self._q > 0 else '-'} {surd}"

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(self._p)
        return hash((self._p, self._q))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticSurd(self._p + o._p, self._q + o._q)

    __radd__ = __add__

    def __sub__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticSurd(self._p - o._p, self._q - o._q)

    def __rsub__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QuadraticSurd:
        return QuadraticSurd(-self._p, -self._q)

    def __pos__(self) -> QuadraticSurd:
        return self

    def __mul__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticSurd(
            self._p * o._p + 5 * self._q * o._q,
            self._p * o._q + self._q * o._p,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticSurd:
        """Galois conjugate ``p - q*sqrt(5)``."""
        return QuadraticSurd(self._p, -self._q)

    def norm(self) -> Fraction:
        """Field norm ``p**2 - 5 q**2``; zero only for the zero element."""
        return self._p * self._p - 5 * self._q * self._q

    def inverse(self) -> QuadraticSurd:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        return QuadraticSurd(self._p / n, -self._q / n)

    def __truediv__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: SurdLike) -> QuadraticSurd:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadraticSurd:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadraticSurd(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``p + q sqrt(5)`` as -1, 0 or 1."""
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0 or sp == sq:
            return sp or sq
        if sp == 0:
            return sq
        # opposite signs: the larger magnitude wins
        d = p * p - 5 * q * q
        return sp if d > 0 else (sq if d < 0 else 0)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q

    def __lt__(self, other: SurdLike) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self) -> bool:
        return bool(self._p) or bool(self._q)

    # -- conversion ---------------------------------------------------------

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        p, q = self._p, self._q
        if q == 0:
            return float(p)
        if p == 0 or (p > 0) == (q > 0):
            return float(p) + float(q) * _SQRT5_FLOAT
        # opposite signs: rewrite as norm / (p - q sqrt5) to avoid cancellation
        return float(self.norm()) / (float(p) - float(q) * _SQRT5_FLOAT)

    def is_rational(self) -> bool:
        return self._q == 0

    def sqrt(self) -> QuadraticSurd:
        """Non-negative square root, if it lies in Q(sqrt 5).

        Raises
        ------
        ValueError
            If the number is negative or its square root is not in the field.
        """
        if self.sign() < 0:
            raise ValueError(f"square root of negative number {self}")
        if not self:
            return QuadraticSurd(0)
        # (x + y sqrt5)^2 = x^2 + 5 y^2 + 2 x y sqrt5
        disc = _fraction_sqrt(self.norm())
        if disc is not None:
            for x2 in ((self._p + disc) / 2, (self._p - disc) / 2):
                x = _fraction_sqrt(x2)
                if x is None:
                    continue
                if x == 0:
                    y = _fraction_sqrt(self._p / 5)
                    if y is None:
                        continue
                else:
                    y = self._q / (2 * x)
                root = QuadraticSurd(x, y)
                if root * root == self:
                    return root if root.sign() >= 0 else -root
        raise ValueError(f"sqrt({self}) is not in Q(sqrt 5)")

    def to_json(self) -> dict:
        return {
            "rational": str(self._p),
            "surd": str(self._q),
            "value": self.to_float(),
        }


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    n, d = math.isqrt(f.numerator), math.isqrt(f.denominator)
    if n * n == f.numerator and d * d == f.denominator:
        return Fraction(n, d)
    return None


def _coerce(value: object) -> QuadraticSurd | None:
    if isinstance(value, QuadraticSurd):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return QuadraticSurd(value)
    return None


def as_surd(value: SurdLike | float) -> QuadraticSurd:
    """Convert an exact number to :class:`QuadraticSurd`.

    Floats are rejected to keep the field exact; wrap them in
    ``Fraction`` explicitly if an exact binary value is really intended.
    """
    s = _coerce(value)
    if s is None:
        raise TypeError(f"cannot represent {value!r} exactly in Q(sqrt 5)")
    return s


SQRT5 = QuadraticSurd(0, 1)


@dataclass(frozen=True)
class VarianceVector:
    """Per-mode ``(x, y)`` variance coefficients in units of the squeezed variance."""

    x_coeff: QuadraticSurd
    y_coeff: QuadraticSurd

    def __post_init__(self):
        object.__setattr__(self, "x_coeff", as_surd(self.x_coeff))
        object.__setattr__(self, "y_coeff", as_surd(self.y_coeff))
        if self.x_coeff < 0 or self.y_coeff < 0:
            raise ValueError(f"variance coefficients must be >= 0, got {self}")

    def __add__(self, other: VarianceVector) -> VarianceVector:
        return VarianceVector(self.x_coeff + other.x_coeff, self.y_coeff + other.y_coeff)

    def __str__(self) -> str:
        return f"({self.x_coeff}, {self.y_coeff})"

    def swapped(self) -> VarianceVector:
        return VarianceVector(self.y_coeff, self.x_coeff)

    def to_floats(self) -> tuple[float, float]:
        return self.x_coeff.to_float(), self.y_coeff.to_float()

    def scaled(self, squeezed_variance: float) -> tuple[float, float]:
        """Absolute variances for a given squeezed-oscillator variance."""
        x, y = self.to_floats()
        return x * squeezed_variance, y * squeezed_variance

    def to_json(self) -> dict:
        return {"x": self.x_coeff.to_json(), "y": self.y_coeff.to_json()}


def db_from_variance(v: float) -> float:
    """Squeezing in dB, ``10 log10(2 v)``; vacuum (``v = 1/2``) is 0 dB."""
    if not v > 0:
        raise ValueError(f"variance must be positive, got {v}")
    return 10.0 * math.log10(2.0 * v)


def variance_from_db(db: float) -> float:
    """Inverse of :func:`db_from_variance`."""
    if not math.isfinite(db):
        raise ValueError(f"dB value must be finite, got {db}")
    return 0.5 * 10.0 ** (db / 10.0)


def erf_eval(z):
    """Error function, odd by construction. Accepts scalars or arrays."""
    z = np.asarray(z, dtype=float)
    out = np.copysign(special.erf(np.abs(z)), z)
    return float(out) if out.ndim == 0 else out


def erfc_eval(z):
    """Complementary error function ``1 - erf(z)`` without cancellation."""
    out = special.erfc(np.asarray(z, dtype=float))
    return float(out) if np.ndim(out) == 0 else out
