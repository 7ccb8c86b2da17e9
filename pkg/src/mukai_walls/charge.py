"""Central charges on the slice ``beta = bH``, ``omega = aH``.

For ``v = (r, Delta, s)`` with ``d = Delta.H``::

    Re Z = b d - s - r (b^2 - a^2) H^2 / 2
    Im Z = a (d - r b H^2)

Phases are never evaluated as angles. Two charges in the closed upper
half-plane (minus the non-negative real ray) are ordered by the sign of a
cross product, which is exact over the rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import Ordering, RationalLike, cmp, frac
from .mukai import MukaiVector, PolarizedSurface


class PhaseUndefined(ValueError):
    """The charge is zero or lies on the non-negative real ray."""


class Unsupported(ValueError):
    pass


class DegeneratePair(ValueError):
    pass


@dataclass(frozen=True)
class StabilityPoint:
    b: Fraction
    a: Fraction
    surface: PolarizedSurface

    def __post_init__(self):
        object.__setattr__(self, "b", frac(self.b))
        object.__setattr__(self, "a", frac(self.a))
        if self.a <= 0:
            raise ValueError(f"a must be positive, got {self.a}")

    def is_valid(self) -> bool:
        """``a^2 H^2 > 2``.

        On the ray ``b = 0`` this is the known existence range; elsewhere it
        is only a working proxy for the full spherical-class criterion.
        """
        return self.a * self.a * self.surface.h2 > 2


@dataclass(frozen=True)
class ChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other: "ChargeValue") -> "ChargeValue":
        return ChargeValue(self.re + other.re, self.im + other.im)

    def scaled(self, lam: RationalLike) -> "ChargeValue":
        lam = frac(lam)
        return ChargeValue(lam * self.re, lam * self.im)


def reduced_charge(b: RationalLike, a2: RationalLike, v: MukaiVector) -> ChargeValue:
    """``(Re Z, Im Z / a)`` at the point with ``a^2 = a2``.

    Both coordinates are rational even when ``a`` is not; dividing the
    imaginary part by ``a > 0`` changes no phase comparison.
    """
    b, a2 = frac(b), frac(a2)
    h2 = v.surface.h2
    d = v.d
    return ChargeValue(b * d - v.s - v.r * (b * b - a2) * h2 / 2, d - v.r * b * h2)


def central_charge(p: StabilityPoint, v: MukaiVector) -> ChargeValue:
    if p.surface.h2 != v.surface.h2:
        raise ValueError("point and vector disagree on H^2")
    z = reduced_charge(p.b, p.a * p.a, v)
    return ChargeValue(z.re, p.a * z.im)


def _in_cone(z: ChargeValue) -> bool:
    return z.im > 0 or (z.im == 0 and z.re < 0)


def phase_compare(z1: ChargeValue, z2: ChargeValue) -> Ordering:
    """Order the phases of ``z1`` and ``z2`` in ``(0, 1]``."""
    for z in (z1, z2):
        if not _in_cone(z):
            raise PhaseUndefined(f"charge {z.re} + {z.im} i has no phase in (0, 1]")
    # the argument grows as the cross product z2 x z1 does
    return cmp(z1.im * z2.re - z1.re * z2.im, 0)


def slope_h(v: MukaiVector, surface: PolarizedSurface | None = None) -> Union[Fraction, float, None]:
    """``mu_H = Delta.H / r``; ``inf`` for torsion classes of positive degree.

    Returns ``None`` when the slope is undefined (rank 0 and ``Delta.H <= 0``).
    """
    if v.r:
        return v.d / v.r
    return math.inf if v.d > 0 else None


def gieseker_limit_phase(v: MukaiVector) -> Fraction:
    """Limit of the phase of ``v`` as ``a`` grows along a vertical line."""
    if v.r == 0 and v.d > 0:
        return Fraction(1, 2)
    if v.r > 0:
        return Fraction(0)
    raise Unsupported("limit phase is only defined for positive rank, or rank 0 with positive degree")


ALWAYS_DOMINANT = "AlwaysDominant"


def phase_dominance_threshold(v0: MukaiVector, v1: MukaiVector, b: RationalLike,
                              surface: PolarizedSurface | None = None) -> Union[Fraction, str]:
    """The ``a^2`` beyond which the torsion class ``v0`` has the larger phase.

    ``Re Z(v0)`` does not depend on ``a``, so the same-phase condition on the
    line ``b = const`` is linear in ``a^2``. Returns :data:`ALWAYS_DOMINANT`
    when the root is not positive.
    """
    if v0.r != 0 or v0.d <= 0:
        raise ValueError("v0 must have rank 0 and positive degree")
    if v1.r <= 0:
        raise ValueError("v1 must have positive rank")
    b = frac(b)
    # cross(a2) = Re Z1 * Im Z0 / a - Re Z0 * Im Z1 / a, linear in a2
    z0 = reduced_charge(b, 0, v0)
    at0 = reduced_charge(b, 0, v1)
    at1 = reduced_charge(b, 1, v1)
    c0 = at0.re * z0.im - z0.re * at0.im
    c1 = (at1.re * z0.im - z0.re * at1.im) - c0
    if c1 == 0:
        if c0 == 0:
            raise DegeneratePair("the two charges are proportional for every a")
        return ALWAYS_DOMINANT if c0 > 0 else _never()
    root = -c0 / c1
    return root if root > 0 else ALWAYS_DOMINANT


def _never():
    raise DegeneratePair("v0 never dominates on this line")


def charge_on_slope_kernel(v: MukaiVector, a: RationalLike, surface: PolarizedSurface | None = None) -> Fraction:
    """``Re Z`` at ``beta = Delta / r``, ``omega = aH``, where ``Im Z`` vanishes.

    Equals ``Delta^2 / (2r) - s + r a^2 H^2 / 2``. A positive value puts the
    charge on the positive real ray, so the shift ``v[1]`` has phase 1.
    """
    if v.r <= 0:
        raise ValueError("needs positive rank")
    a = frac(a)
    return v.delta_sq / (2 * v.r) - v.s + v.r * a * a * v.surface.h2 / 2
