"""Exact half-integer arithmetic on doubled-integer storage."""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction


def _twice_from(value) -> int:
    """Doubled-integer representation of ``value``; rejects non-half-integers."""
    if isinstance(value, HalfInt):
        return value.twice
    if isinstance(value, numbers.Integral):
        return 2 * int(value)
    if isinstance(value, Fraction):
        doubled = 2 * value
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not an integer multiple of 1/2")
        return int(doubled)
    if isinstance(value, numbers.Real):
        doubled = 2.0 * float(value)
        if doubled != int(doubled):
            raise ValueError(f"{value!r} is not an integer multiple of 1/2")
        return int(doubled)
    raise TypeError(f"cannot interpret {value!r} as a half-integer")


def as_half(value) -> "HalfInt":
    """Coerce an int, exact .5-multiple float, Fraction or HalfInt to HalfInt."""
    if isinstance(value, HalfInt):
        return value
    return HalfInt(_twice_from(value))


@dataclass(frozen=True, order=True)
class HalfInt:
    """A value v with 2v integer, stored as the exact integer ``twice``.

    Spin magnitudes, local eigenvalues and total magnetizations are all of
    this form; keeping the doubled integer makes every sum, difference and
    comparison exact.  Note the constructor takes the *doubled* value:
    ``HalfInt(3)`` is 3/2.  Use :func:`as_half` to construct from the value
    itself.
    """

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, numbers.Integral):
            raise TypeError("twice must be an integer (doubled value)")
        object.__setattr__(self, "twice", int(self.twice))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_integer(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self) -> float:
        return self.twice / 2.0

    def __add__(self, other):
        return HalfInt(self.twice + _twice_from(other))

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - _twice_from(other))

    def __rsub__(self, other):
        return HalfInt(_twice_from(other) - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __bool__(self):
        return self.twice != 0

    def __mul__(self, other):
        if isinstance(other, numbers.Integral):
            return HalfInt(self.twice * int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"
