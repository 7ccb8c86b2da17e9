"""Exact rational helpers shared by every module.

Everything in this package is computed over :class:`fractions.Fraction`.
Irrational quantities only ever appear as square roots of rationals, and
those are compared by squaring with explicit sign analysis.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction, str]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def frac(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction, rejecting floats (they are never exact here)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def fmt(x: Fraction | int) -> str:
    """Render a rational as ``"p/q"`` (always with a denominator)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def cmp(x: Fraction | int, y: Fraction | int) -> Ordering:
    return Ordering((x > y) - (x < y))


def cmp_rational_sqrt(x: RationalLike, n: RationalLike) -> Ordering:
    """Order ``x`` against ``sqrt(n)`` exactly, for ``n >= 0``."""
    x, n = frac(x), frac(n)
    if n < 0:
        raise ValueError("sqrt of a negative rational")
    if x < 0:
        return Ordering.LESS
    return cmp(x * x, n)


def floor_sqrt(n: RationalLike) -> int:
    """Greatest integer ``m`` with ``m <= sqrt(n)``."""
    n = frac(n)
    if n < 0:
        raise ValueError("sqrt of a negative rational")
    # floor(sqrt(n)) == floor(sqrt(floor(n))) for n >= 0
    return math.isqrt(n.numerator // n.denominator)


def floor_half_sum_sqrt(x: RationalLike, n: RationalLike) -> int:
    """Greatest integer ``m`` with ``m <= x + sqrt(n)/2``."""
    x, n = frac(x), frac(n)
    # m <= x + sqrt(n)/2  <=>  2m - 2x <= sqrt(n)
    m = math.floor(x) + floor_sqrt(n) // 2
    while cmp_rational_sqrt(2 * m - 2 * x, n) != Ordering.GREATER:
        m += 1
    m -= 1
    while cmp_rational_sqrt(2 * m - 2 * x, n) == Ordering.GREATER:
        m -= 1
    return m


def integral(x: Fraction | int) -> bool:
    return Fraction(x).denominator == 1


def lower_sqrt_approx(n: Fraction, bits: int = 40) -> Fraction:
    """A rational ``q`` with ``0 <= q <= sqrt(n)`` and relative error about ``2**-bits``."""
    if n < 0:
        raise ValueError("sqrt of a negative rational")
    scale = 1 << (2 * bits)
    q = Fraction(math.isqrt((n.numerator * scale) // n.denominator), 1 << bits)
    assert q * q <= n
    return q
