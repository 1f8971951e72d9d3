"""Exact rational arithmetic helpers.

Thresholds such as ``eps ** (1/6)`` are irrational in general, so they are
carried as :class:`Root` values and compared by raising the other side to
the matching integer power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and floats to a Fraction.

    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


@dataclass(frozen=True)
class Root:
    """The non-negative real ``base ** (1/k)``."""

    base: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "base", as_fraction(self.base))
        if self.k < 1:
            raise ValueError("root index must be >= 1")
        if self.base < 0:
            raise ValueError("root of a negative number")

    def __float__(self) -> float:
        return float(self.base) ** (1.0 / self.k)

    def __str__(self) -> str:
        return f"{self.base}^(1/{self.k})" if self.k > 1 else str(self.base)


Threshold = Union[Fraction, int, Root]


def threshold(x) -> Fraction | Root:
    if isinstance(x, Root):
        return x.base if x.k == 1 else x
    return as_fraction(x)


def compare(x: Fraction, t: Fraction | Root) -> int:
    """Exact three-way comparison of a rational with a threshold."""
    if isinstance(t, Root):
        if x < 0:
            return -1
        lhs = x ** t.k
        return (lhs > t.base) - (lhs < t.base)
    return (x > t) - (x < t)


def le(x: Fraction, t: Fraction | Root) -> bool:
    return compare(x, t) <= 0


def ge(x: Fraction, t: Fraction | Root) -> bool:
    return compare(x, t) >= 0


def ceil_times(t: Fraction | Root, m: int) -> int:
    """Smallest integer ``0 <= s <= m`` with ``s >= t * m``, else ``m + 1``.

    Used for subset sizes, so anything above ``m`` just means "no size works".
    """
    if m == 0:
        return 0
    for s in range(m + 1):
        if ge(Fraction(s, m), t):
            return s
    return m + 1
