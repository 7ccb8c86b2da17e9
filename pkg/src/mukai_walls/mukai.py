"""Mukai vectors on a polarized K3 surface.

A Mukai vector is ``(r, Delta, s)`` with ``r`` the rank, ``Delta`` a
numerical divisor class and ``s = ch_2 + r``. Divisor classes are usually
known only through their invariants relative to the polarization ``H``:
the coefficient ``c = Delta.H / H^2`` and the square of the part
orthogonal to ``H``. Intersection numbers that those invariants do not
determine raise :class:`UndeterminedPairing` instead of being guessed.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from .exact import RationalLike, floor_half_sum_sqrt, fmt, frac, integral
from .nslattice import GramLattice


class UndeterminedPairing(ValueError):
    """The orthogonal cross term of two divisor classes is not known."""


class NonPureClass(ValueError):
    """The divisor class is not a rational multiple of ``H``."""


@dataclass(frozen=True)
class PolarizedSurface:
    h2: int
    ns: Optional[GramLattice] = None

    def __post_init__(self):
        if int(self.h2) != self.h2 or self.h2 < 2 or self.h2 % 2:
            raise ValueError(f"H^2 must be an even integer >= 2, got {self.h2}")
        object.__setattr__(self, "h2", int(self.h2))
        if self.ns is not None and self.ns.h2 != self.h2:
            raise ValueError(f"lattice polarization has square {self.ns.h2}, surface says {self.h2}")

    def vector(self, r: int, delta: "NumDivisorClass | RationalLike", s: RationalLike) -> "MukaiVector":
        """``(r, delta, s)``; a bare number for ``delta`` means that multiple of ``H``."""
        if not isinstance(delta, (PureH, HPlusOrtho, LatticeCoords)):
            delta = PureH(frac(delta))
        return MukaiVector(r, delta, frac(s), self)

    def from_degree(self, r: int, d: RationalLike, s: RationalLike) -> "MukaiVector":
        """``(r, (d/H^2) H, s)``, i.e. the vector with ``Delta.H = d``."""
        return MukaiVector(r, PureH(frac(d) / self.h2), frac(s), self)


# -- numerical divisor classes ------------------------------------------------

@dataclass(frozen=True)
class PureH:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", frac(self.c))

    def h_degree(self, h2: int) -> Fraction:
        return self.c * h2

    def self_int(self, h2: int) -> Fraction:
        return self.c * self.c * h2

    def scaled(self, lam: RationalLike) -> "PureH":
        return PureH(self.c * frac(lam))

    def plus_h(self, m: RationalLike) -> "PureH":
        return PureH(self.c + frac(m))


@dataclass(frozen=True)
class HPlusOrtho:
    """``Delta = c H + Omega`` with ``Omega`` orthogonal to ``H`` and ``Omega^2 = omega_sq``.

    ``Omega`` is ``weight`` times an unnamed orthogonal class labelled
    ``tag``. Two classes with the same tag share that direction, which is
    what makes ``Delta . (H - Delta)`` computable; untagged classes never
    pair with each other unless one of them has ``omega_sq == 0``.
    """
    c: Fraction
    omega_sq: Fraction
    tag: Optional[str] = None
    weight: Fraction = field(default=Fraction(1))

    def __post_init__(self):
        object.__setattr__(self, "c", frac(self.c))
        object.__setattr__(self, "omega_sq", frac(self.omega_sq))
        object.__setattr__(self, "weight", frac(self.weight))
        # the intersection form is negative definite on H-perp
        if self.omega_sq > 0:
            raise ValueError(f"omega_sq must be <= 0, got {self.omega_sq}")

    def h_degree(self, h2: int) -> Fraction:
        return self.c * h2

    def self_int(self, h2: int) -> Fraction:
        return self.c * self.c * h2 + self.omega_sq

    def scaled(self, lam: RationalLike) -> "HPlusOrtho":
        lam = frac(lam)
        return HPlusOrtho(self.c * lam, self.omega_sq * lam * lam, self.tag, self.weight * lam)

    def plus_h(self, m: RationalLike) -> "HPlusOrtho":
        return replace(self, c=self.c + frac(m))

    @property
    def unit_sq(self) -> Optional[Fraction]:
        """Square of the tagged unit direction, when it can be recovered."""
        return self.omega_sq / (self.weight * self.weight) if self.weight else None


@dataclass(frozen=True)
class LatticeCoords:
    lattice: GramLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(v) for v in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(f"expected {self.lattice.rank} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def h_degree(self, h2: int) -> Fraction:
        return Fraction(self.lattice.hdeg(self.coords))

    def self_int(self, h2: int) -> Fraction:
        return Fraction(self.lattice.square(self.coords))

    def scaled(self, lam: RationalLike) -> "LatticeCoords":
        lam = frac(lam)
        if not integral(lam):
            raise ValueError("lattice classes only scale by integers")
        return LatticeCoords(self.lattice, tuple(int(lam) * v for v in self.coords))

    def plus_h(self, m: RationalLike) -> "LatticeCoords":
        m = frac(m)
        if not integral(m):
            raise ValueError("only integer multiples of H can be added to a lattice class")
        return LatticeCoords(self.lattice, tuple(v + int(m) * h for v, h in zip(self.coords, self.lattice.h)))


NumDivisorClass = Union[PureH, HPlusOrtho, LatticeCoords]


def _is_pure(x: NumDivisorClass) -> bool:
    return isinstance(x, PureH) or (isinstance(x, HPlusOrtho) and x.omega_sq == 0)


def class_dot(x: NumDivisorClass, y: NumDivisorClass, h2: int) -> Fraction:
    """Intersection number ``x . y``."""
    if _is_pure(x):
        return x.c * y.h_degree(h2)
    if _is_pure(y):
        return y.c * x.h_degree(h2)
    if isinstance(x, LatticeCoords) and isinstance(y, LatticeCoords):
        if x.lattice != y.lattice:
            raise UndeterminedPairing("classes live in different lattices")
        return Fraction(x.lattice.dot(x.coords, y.coords))
    if isinstance(x, HPlusOrtho) and isinstance(y, HPlusOrtho) and x.tag is not None and x.tag == y.tag:
        if x.unit_sq != y.unit_sq:
            raise ValueError(f"inconsistent squares for orthogonal direction {x.tag!r}")
        return x.c * y.c * h2 + x.weight * y.weight * x.unit_sq
    raise UndeterminedPairing(
        "both classes carry orthogonal parts whose product is unknown; "
        "tag a shared direction or give lattice coordinates")


def class_add(x: NumDivisorClass, y: NumDivisorClass) -> NumDivisorClass:
    if isinstance(x, PureH):
        return y.plus_h(x.c) if not isinstance(y, LatticeCoords) or integral(x.c) else _undetermined_sum()
    if isinstance(y, PureH):
        return class_add(y, x)
    if isinstance(x, LatticeCoords) and isinstance(y, LatticeCoords) and x.lattice == y.lattice:
        return LatticeCoords(x.lattice, tuple(a + b for a, b in zip(x.coords, y.coords)))
    if isinstance(x, HPlusOrtho) and isinstance(y, HPlusOrtho):
        if x.omega_sq == 0:
            return y.plus_h(x.c)
        if y.omega_sq == 0:
            return x.plus_h(y.c)
        if x.tag is not None and x.tag == y.tag:
            w = x.weight + y.weight
            return HPlusOrtho(x.c + y.c, w * w * x.unit_sq, x.tag, w)
    return _undetermined_sum()


def _undetermined_sum():
    raise UndeterminedPairing("the sum of these classes is not representable")


def complement_in(delta: NumDivisorClass, m: int = 1) -> NumDivisorClass:
    """The class ``m H - delta``.

    For an :class:`HPlusOrtho` class the orthogonal part must be tagged, so
    that the complement is recognised as carrying the opposite of it.
    """
    if isinstance(delta, HPlusOrtho) and delta.omega_sq != 0 and delta.tag is None:
        raise ValueError("tag the orthogonal part first, e.g. HPlusOrtho(c, omega_sq, tag='Omega')")
    return delta.scaled(-1).plus_h(m)


# -- Mukai vectors -------------------------------------------------------------

@dataclass(frozen=True)
class MukaiVector:
    r: int
    delta: NumDivisorClass
    s: Fraction
    surface: PolarizedSurface

    def __post_init__(self):
        if int(self.r) != self.r:
            raise ValueError(f"rank must be an integer, got {self.r}")
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "s", frac(self.s))
        if isinstance(self.delta, LatticeCoords) and self.delta.lattice.h2 != self.surface.h2:
            raise ValueError("lattice class and surface disagree on H^2")

    @property
    def d(self) -> Fraction:
        """``Delta . H``."""
        return self.delta.h_degree(self.surface.h2)

    @property
    def delta_sq(self) -> Fraction:
        return self.delta.self_int(self.surface.h2)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, self.delta.scaled(-1), -self.s, self.surface)

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        _same_surface(self, other)
        return MukaiVector(self.r + other.r, class_add(self.delta, other.delta), self.s + other.s, self.surface)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return self + (-other)

    def __mul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, self.delta.scaled(k), k * self.s, self.surface)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.r}, {self.d}/H^2 H, {self.s})" if _is_pure(self.delta) else repr(self)


def _same_surface(v: MukaiVector, w: MukaiVector) -> None:
    if v.surface.h2 != w.surface.h2:
        raise ValueError("vectors live on surfaces with different H^2")


def structure_sheaf(surface: PolarizedSurface) -> MukaiVector:
    """``v(O_X) = (1, 0, 1)``."""
    return MukaiVector(1, PureH(0), Fraction(1), surface)


def pairing(v: MukaiVector, w: MukaiVector) -> Fraction:
    """Mukai pairing ``Delta_1.Delta_2 - r_1 s_2 - r_2 s_1``."""
    _same_surface(v, w)
    return class_dot(v.delta, w.delta, v.surface.h2) - v.r * w.s - w.r * v.s


def square(v: MukaiVector) -> Fraction:
    return v.delta_sq - 2 * v.r * v.s


def chi(v: MukaiVector) -> Fraction:
    """Euler characteristic ``r + s``, that is ``-<v(O_X), v>``."""
    return v.r + v.s


def twist_h(v: MukaiVector, m: int) -> MukaiVector:
    """Mukai vector of ``E(mH)``."""
    if int(m) != m:
        raise ValueError("twists are by integer multiples of H")
    m = int(m)
    h2 = v.surface.h2
    return MukaiVector(v.r, v.delta.plus_h(m * v.r), v.s + m * v.d + Fraction(v.r * m * m * h2, 2), v.surface)


def shift(v: MukaiVector) -> MukaiVector:
    """Mukai vector of ``E[1]``."""
    return -v


def jh_square_lower_bound(n: int) -> int:
    """Lower bound ``-2 n^2`` for ``v^2`` of a semistable object with ``n`` JH factors."""
    if n < 1:
        raise ValueError("need at least one Jordan-Hölder factor")
    return -2 * n * n


def satisfies_jh_bound(v: MukaiVector, n: int) -> bool:
    return square(v) >= jh_square_lower_bound(n)


def _pure_coefficient(v: MukaiVector) -> Fraction:
    h2 = v.surface.h2
    # equality in the Hodge index bound forces the orthogonal part to vanish
    if v.delta_sq * h2 != v.d * v.d:
        raise NonPureClass("the h0 bound needs Delta to be a rational multiple of H")
    return v.d / h2


def h0_upper_bound(v: MukaiVector, surface: PolarizedSurface | None = None, *,
                   statement_radicand: bool = False) -> tuple[Fraction, Fraction]:
    """The section bound ``chi/2 + sqrt(radicand)/2`` as ``(chi/2, radicand)``.

    The radicand is ``(r - s)^2 + c^2 (2 H^2 + 4)``, which is what the
    positivity of ``-2x^2 + 2x chi + v^2 + 2c^2`` gives. With
    ``statement_radicand=True`` the weaker-looking ``c^2 (H^2 + 4)`` is used
    instead, for comparison only.

    The stability hypotheses behind the bound are the caller's business.
    """
    surface = surface or v.surface
    if surface.h2 != v.surface.h2:
        raise ValueError("vector and surface disagree on H^2")
    c = _pure_coefficient(v)
    factor = surface.h2 + 4 if statement_radicand else 2 * surface.h2 + 4
    rad = (v.r - v.s) ** 2 + c * c * factor
    return chi(v) / 2, rad


def h0_max(v: MukaiVector, surface: PolarizedSurface | None = None, *,
           statement_radicand: bool = False) -> int:
    """Greatest integer below the section bound, and never below 0."""
    half_chi, rad = h0_upper_bound(v, surface, statement_radicand=statement_radicand)
    return max(0, floor_half_sum_sqrt(half_chi, rad))


# -- JSON ----------------------------------------------------------------------

def class_to_json(delta: NumDivisorClass) -> dict:
    if isinstance(delta, PureH):
        return {"kind": "pureH", "c": fmt(delta.c)}
    if isinstance(delta, HPlusOrtho):
        out = {"kind": "hOrtho", "c": fmt(delta.c), "omega_sq": fmt(delta.omega_sq)}
        if delta.tag is not None:
            out["tag"] = delta.tag
            out["weight"] = fmt(delta.weight)
        return out
    return {"kind": "coords", "coords": list(delta.coords)}


def class_from_json(data: dict, surface: PolarizedSurface) -> NumDivisorClass:
    kind = data.get("kind")
    if kind == "pureH":
        return PureH(frac(data["c"]))
    if kind == "hOrtho":
        return HPlusOrtho(frac(data["c"]), frac(data["omega_sq"]), data.get("tag"), frac(data.get("weight", 1)))
    if kind == "coords":
        if surface.ns is None:
            raise ValueError("coordinate classes need a surface with a lattice")
        return LatticeCoords(surface.ns, tuple(data["coords"]))
    raise ValueError(f"unknown divisor class kind {kind!r}")


def vector_to_json(v: MukaiVector) -> dict:
    return {"r": v.r, "delta": class_to_json(v.delta), "s": fmt(v.s)}


def vector_from_json(data: dict, surface: PolarizedSurface) -> MukaiVector:
    return MukaiVector(int(data["r"]), class_from_json(data["delta"], surface), frac(data["s"]), surface)
