"""Numeric tower: an exact rational profile and approximate binary profiles.

Two kinds of context share one small interface (``convert``, ``sqrt``,
``atan2``, ``cos``, ``sin``, ``tan``, ``pi``):

* ``EXACT`` works on :class:`fractions.Fraction` and refuses irrational
  operations.
* ``approx(w)`` rounds to nearest-even with a ``w``-bit mantissa.  ``w == 53``
  runs on native floats; wider mantissas run on a private mpmath context.

Geometry code is written once against this interface and evaluated under
whichever context the caller picks.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

import mpmath
from mpmath import libmp

from .errors import NotRepresentable

Scalar = Union[Fraction, float, Any]  # Any covers mpmath mpf values

DEFAULT_WIDTH = 53
LADDER_WIDTHS = (53, 150, 300)


def is_rational(x: Any) -> bool:
    return isinstance(x, (int, Fraction))


def to_fraction(x: Any) -> Fraction:
    """Exact rational value of a finite int, Fraction, float or mpf."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"{x} is not finite")
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


class ExactContext:
    """Arbitrary-precision rational arithmetic; error-free on rational data."""

    width = None
    is_exact = True
    eps = Fraction(0)

    def convert(self, x: Any) -> Fraction:
        return to_fraction(x)

    def _irrational(self, name: str):
        raise NotRepresentable(f"{name} is not available in the EXACT profile")

    def sqrt(self, x):
        x = to_fraction(x)
        if x >= 0:
            n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
            if n * n == x.numerator and d * d == x.denominator:
                return Fraction(n, d)
        self._irrational("sqrt of a non-square")

    def atan2(self, y, x):
        self._irrational("atan2")

    def cos(self, x):
        self._irrational("cos")

    def sin(self, x):
        self._irrational("sin")

    def tan(self, x):
        self._irrational("tan")

    @property
    def pi(self):
        self._irrational("pi")

    def __repr__(self) -> str:
        return "EXACT"


class FloatContext:
    """IEEE binary64, the 53-bit approximate profile."""

    width = 53
    is_exact = False
    eps = 2.0**-53
    pi = math.pi
    sqrt = staticmethod(math.sqrt)
    atan2 = staticmethod(math.atan2)
    cos = staticmethod(math.cos)
    sin = staticmethod(math.sin)
    tan = staticmethod(math.tan)

    def convert(self, x: Any) -> float:
        # float(Fraction) is correctly rounded; float(mpf) rounds to nearest
        return x if type(x) is float else float(x)

    def __repr__(self) -> str:
        return "APPROX(53)"


class MPContext:
    """Binary floating point with a ``width``-bit mantissa, via mpmath."""

    is_exact = False

    def __init__(self, width: int):
        self.width = width
        self.eps = Fraction(1, 2**width)
        self._mp = mpmath.MPContext()
        self._mp.prec = width
        self._mpf = self._mp.mpf
        self.sqrt = self._mp.sqrt
        self.atan2 = self._mp.atan2
        self.cos = self._mp.cos
        self.sin = self._mp.sin
        self.tan = self._mp.tan
        self.pi = +self._mp.pi

    def convert(self, x: Any):
        if isinstance(x, self._mpf):
            return x
        if isinstance(x, Fraction):
            return self._mp.make_mpf(
                libmp.from_rational(x.numerator, x.denominator, self.width, libmp.round_nearest)
            )
        return self._mpf(x)

    def __repr__(self) -> str:
        return f"APPROX({self.width})"


EXACT = ExactContext()
APPROX53 = FloatContext()


@lru_cache(maxsize=None)
def approx(width: int = DEFAULT_WIDTH):
    """Approximate context with a ``width``-bit mantissa (``width >= 53``)."""
    if width < 53:
        raise ValueError(f"mantissa width must be >= 53, got {width}")
    if width == 53:
        return APPROX53
    return MPContext(width)


def context_for(width: int | None):
    """``None`` selects the exact profile, an int an approximate one."""
    return EXACT if width is None else approx(width)


def rel_residual(lhs, rhs) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|), reported as a float."""
    scale = max(abs(lhs), abs(rhs))
    if scale == 0:
        return 0.0
    return float(abs(lhs - rhs) / scale)


def ulp(x, width: int = DEFAULT_WIDTH) -> float:
    """Unit in the last place of ``x`` for a ``width``-bit mantissa."""
    if x == 0:
        return math.ldexp(1.0, -1074)
    return math.ldexp(1.0, math.frexp(float(x))[1] - width)
