"""Numerical walls in the ``(b, a)`` half-plane.

The charges of ``v`` and ``w`` are real-proportional where
``Re Z_v Im Z_w - Re Z_w Im Z_v`` vanishes. Divided by ``a`` this is

    P(b, a) = k2 (a^2 + b^2) + k1 b + k0

with ``k2 = (H^2/2)(r_v d_w - r_w d_v)``, ``k1 = H^2 (s_v r_w - s_w r_v)``
and ``k0 = s_w d_v - s_v d_w``: a semicircle centred on the ``b``-axis, a
vertical line, everything, or nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import RationalLike, fmt, frac, lower_sqrt_approx
from .mukai import MukaiVector

SEMICIRCLE = "Semicircle"
VERTICAL_LINE = "VerticalLine"
EVERYWHERE = "Everywhere"
EMPTY = "Empty"


class EmptyWall(ValueError):
    pass


@dataclass(frozen=True)
class Wall:
    pair: tuple[MukaiVector, MukaiVector]
    k2: Fraction
    k1: Fraction
    k0: Fraction

    @property
    def kind(self) -> str:
        if self.k2:
            return SEMICIRCLE if self.radius_sq > 0 else EMPTY
        if self.k1:
            return VERTICAL_LINE
        return EVERYWHERE if self.k0 == 0 else EMPTY

    @property
    def center_b(self) -> Optional[Fraction]:
        return -self.k1 / (2 * self.k2) if self.k2 else None

    @property
    def radius_sq(self) -> Optional[Fraction]:
        if not self.k2:
            return None
        return self.center_b ** 2 - self.k0 / self.k2

    @property
    def line_b(self) -> Optional[Fraction]:
        return -self.k0 / self.k1 if not self.k2 and self.k1 else None

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.k2, self.k1, self.k0

    def value(self, b: RationalLike, a2: RationalLike) -> Fraction:
        b, a2 = frac(b), frac(a2)
        return self.k2 * (a2 + b * b) + self.k1 * b + self.k0

    def a2_at(self, b: RationalLike) -> Optional[Fraction]:
        """The unique ``a^2 > 0`` on the wall above ``b``, if there is one."""
        b = frac(b)
        if not self.k2:
            return None
        a2 = -(self.k1 * b + self.k0) / self.k2 - b * b
        return a2 if a2 > 0 else None

    def same_locus(self, other: "Wall") -> bool:
        u, w = self.coefficients, other.coefficients
        # proportional coefficient triples
        return all(u[i] * w[j] == u[j] * w[i] for i in range(3) for j in range(3))

    def to_json(self) -> dict:
        out = {"kind": self.kind, "coefficients": [fmt(k) for k in self.coefficients]}
        if self.kind == SEMICIRCLE:
            out["center_b"] = fmt(self.center_b)
            out["radius_sq"] = fmt(self.radius_sq)
        elif self.kind == VERTICAL_LINE:
            out["b"] = fmt(self.line_b)
        return out


def numerical_wall(v: MukaiVector, w: MukaiVector, surface=None) -> Wall:
    h2 = v.surface.h2
    if w.surface.h2 != h2:
        raise ValueError("vectors disagree on H^2")
    k2 = Fraction(h2, 2) * (v.r * w.d - w.r * v.d)
    k1 = h2 * (v.s * w.r - w.s * v.r)
    k0 = w.s * v.d - v.s * w.d
    return Wall((v, w), k2, k1, k0)


def ray_wall_a2(v: MukaiVector, w: MukaiVector, surface=None, b: RationalLike = 0) -> Optional[Fraction]:
    """``a^2`` where the wall of ``(v, w)`` crosses the vertical line at ``b``."""
    b = frac(b)
    if b == 0:
        # same-phase equation on the ray b = 0, solved directly
        den = v.surface.h2 * (w.r * v.d - v.r * w.d)
        if den == 0:
            return None
        a2 = 2 * (w.s * v.d - v.s * w.d) / den
        return a2 if a2 > 0 else None
    return numerical_wall(v, w).a2_at(b)


def sample_wall(wall: Wall, n: int) -> list[tuple[Fraction, Fraction]]:
    """``n`` exact points ``(b, a^2)`` on the wall, sorted by ``b`` then ``a^2``.

    Semicircles are sampled at rational ``b`` strictly inside the diameter,
    symmetrically about the centre; odd ``n`` includes the apex.
    """
    if n < 1:
        raise ValueError("n must be positive")
    kind = wall.kind
    if kind == VERTICAL_LINE:
        return [(wall.line_b, Fraction(j * j)) for j in range(1, n + 1)]
    if kind != SEMICIRCLE:
        raise EmptyWall(f"cannot sample a wall of kind {kind}")
    c, r2 = wall.center_b, wall.radius_sq
    radius = lower_sqrt_approx(r2)
    pts = []
    for j in range(n):
        t = Fraction(2 * j - (n - 1), n + 1)
        b = c + t * radius
        pts.append((b, r2 - (b - c) ** 2))
    return sorted(pts)


# -- SVG ---------------------------------------------------------------------

def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def walls_svg(walls: Sequence[Wall], scale: int = 1) -> str:
    """SVG 1.1 picture of the walls over ``-2 <= b <= 2``, ``0 <= a <= 2``.

    The ``b``-axis runs along the bottom edge. Elements follow input order.
    """
    f = scale
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(-2 * f)} 0 {_num(4 * f)} {_num(2 * f)}">',
        f'<line x1="{_num(-2 * f)}" y1="{_num(2 * f)}" x2="{_num(2 * f)}" y2="{_num(2 * f)}" '
        f'stroke="black" stroke-width="{_num(0.01 * f)}"/>',
    ]
    base = 2 * f
    for i, wall in enumerate(walls):
        kind = wall.kind
        if kind == SEMICIRCLE:
            c = float(wall.center_b)
            r = float(wall.radius_sq) ** 0.5
            d = (f"M {_num((c - r) * f)} {_num(base)} "
                 f"A {_num(r * f)} {_num(r * f)} 0 0 1 {_num((c + r) * f)} {_num(base)}")
            lines.append(f'<path id="wall{i}" class="semicircle" d="{d}" fill="none" '
                         f'stroke="blue" stroke-width="{_num(0.01 * f)}"/>')
        elif kind == VERTICAL_LINE:
            x = _num(float(wall.line_b) * f)
            lines.append(f'<line id="wall{i}" class="vertical" x1="{x}" y1="0" x2="{x}" y2="{_num(base)}" '
                         f'stroke="blue" stroke-width="{_num(0.01 * f)}"/>')
        else:
            lines.append(f'<g id="wall{i}" class="{kind.lower()}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
