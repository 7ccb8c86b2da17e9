"""Numerical destabilizers on the ray ``b = 0``.

Given ``v = (R, D/H^2 H, S)`` of positive rank, a candidate subobject has
Mukai vector ``(r0, Delta0, s0)`` with ``d0 = Delta0.H``. It can build a
wall above ``a^2 H^2 = a2h2_min`` only if

* ``d0 > 0`` and ``d0 R < D r0`` (positive degree, strictly smaller slope),
* ``s0 D > S d0`` (the wall sits at positive ``a^2``),
* the wall position ``2 (s0 D - S d0) / (r0 D - R d0)`` exceeds ``a2h2_min``,
* some even ``Delta0^2`` satisfies ``2 r0 s0 - 2 <= Delta0^2 <= d0^2 / H^2``
  (a stable factor has ``v^2 >= -2``; Hodge index bounds ``Delta0^2``).

:func:`enumerate_destabilizers` searches this box directly.
:func:`lemma_case_table` reaches the same set through the congruence
bookkeeping ``s0 = (k + a)/4``, ``r0 = (k + b)/m`` used for the three genus
families, and is kept independent on purpose so the two can check each
other.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import Ordering, RationalLike, cmp_rational_sqrt, fmt, frac, integral
from .mukai import MukaiVector, PolarizedSurface


class NonIntegralInput(ValueError):
    pass


class ParityMismatch(ValueError):
    pass


# -- obstruction flags -----------------------------------------------------

NO_SQUARE_ZERO_DEGREE_ONE = "NoSquareZeroDegreeOne"
ELLIPTIC_PENCIL_DEG2 = "EllipticPencilDeg2"
ELLIPTIC_PENCIL_DEG6 = "EllipticPencilDeg6"
HYPERELLIPTIC_PENCIL = "HyperellipticPencil"
UNCLASSIFIED = "Unclassified"

UNOBSTRUCTED = "Unobstructed"
CONDITIONAL = "Conditional"
IMPOSSIBLE = "Impossible"

GONALITY_CONDITION = "gonality(C) <= 6"
HYPERELLIPTIC_CONDITION = "(X,H) or (X,H-Delta0) hyperelliptic"


@dataclass(frozen=True)
class ObstructionFlag:
    aux_class: str
    aux_sq: int
    aux_hdeg: int
    meaning: str

    @property
    def verdict(self) -> tuple[str, Optional[str]]:
        if self.meaning in (NO_SQUARE_ZERO_DEGREE_ONE, ELLIPTIC_PENCIL_DEG2):
            return IMPOSSIBLE, None
        if self.meaning == ELLIPTIC_PENCIL_DEG6:
            return CONDITIONAL, GONALITY_CONDITION
        if self.meaning == HYPERELLIPTIC_PENCIL:
            return CONDITIONAL, HYPERELLIPTIC_CONDITION
        return UNOBSTRUCTED, None

    def to_json(self) -> dict:
        return {"aux_class": self.aux_class, "aux_sq": self.aux_sq, "aux_hdeg": self.aux_hdeg,
                "meaning": self.meaning}


def classify_aux(h2: int, d0: int, delta0_sq: int) -> list[ObstructionFlag]:
    """Flags for ``H - Delta0`` and ``H - 2 Delta0``.

    * square 0, degree 1 (either class): impossible, such a class would cut
      a ``g^1_1`` on curves in ``|H|``;
    * ``H - 2 Delta0`` of square 0 and degree 2: it meets ``H - Delta0`` in
      degree 1, the same ``g^1_1`` contradiction on ``|H - Delta0|``;
    * ``H - 2 Delta0`` of square 0 meeting ``H - Delta0`` in degree 2:
      hyperelliptic condition;
    * ``H - 2 Delta0`` of square 0 and degree 6: a ``g^1_6`` on ``C``,
      excluded when the gonality is at least 7.

    Anything else is reported raw as unclassified.
    """
    flags = []
    cross = h2 - 3 * d0 + 2 * delta0_sq
    for k, name in ((1, "H-Delta0"), (2, "H-2Delta0")):
        sq = h2 - 2 * k * d0 + k * k * delta0_sq
        deg = h2 - k * d0
        meaning = UNCLASSIFIED
        if sq == 0 and deg == 1:
            meaning = NO_SQUARE_ZERO_DEGREE_ONE
        elif k == 2 and sq == 0 and deg == 2:
            meaning = ELLIPTIC_PENCIL_DEG2
        elif k == 2 and sq == 0 and deg == 6:
            meaning = ELLIPTIC_PENCIL_DEG6
        elif k == 2 and sq == 0 and cross == 2:
            meaning = HYPERELLIPTIC_PENCIL
        flags.append(ObstructionFlag(name, sq, deg, meaning))
    return flags


def _combine(verdicts: list[tuple[str, Optional[str]]]) -> tuple[str, Optional[str]]:
    """Worst verdict wins within one numerical option."""
    if any(v == IMPOSSIBLE for v, _ in verdicts):
        return IMPOSSIBLE, None
    conds = sorted({c for v, c in verdicts if v == CONDITIONAL})
    if conds:
        return CONDITIONAL, "; ".join(conds)
    return UNOBSTRUCTED, None


@dataclass(frozen=True)
class CandidateOption:
    delta0_sq: int
    omega_sq: Fraction
    obstructions: list[ObstructionFlag]

    @property
    def verdict(self) -> tuple[str, Optional[str]]:
        return _combine([f.verdict for f in self.obstructions])

    def to_json(self) -> dict:
        kind, cond = self.verdict
        return {"delta0_sq": self.delta0_sq, "omega_sq": fmt(self.omega_sq),
                "obstructions": [f.to_json() for f in self.obstructions],
                "verdict": {"kind": kind, "condition": cond}}


@dataclass(frozen=True)
class WallCandidate:
    r0: int
    d0: int
    s0: int
    a2h2: Fraction
    options: list[CandidateOption] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, int, int]:
        return self.r0, self.d0, self.s0

    @property
    def delta0_sq_options(self) -> list[int]:
        return [o.delta0_sq for o in self.options]

    @property
    def verdict(self) -> tuple[str, Optional[str]]:
        """Best verdict over the options: the candidate survives if any option does."""
        vs = [o.verdict for o in self.options]
        if any(v == UNOBSTRUCTED for v, _ in vs):
            return UNOBSTRUCTED, None
        conds = sorted({c for v, c in vs if v == CONDITIONAL})
        if conds:
            return CONDITIONAL, "; ".join(conds)
        return IMPOSSIBLE, None

    def vector(self, surface: PolarizedSurface) -> MukaiVector:
        return surface.from_degree(self.r0, self.d0, self.s0)

    def to_json(self) -> dict:
        kind, cond = self.verdict
        return {"r0": self.r0, "d0": self.d0, "s0": self.s0, "a2h2": fmt(self.a2h2),
                "delta0_sq_options": self.delta0_sq_options,
                "options": [o.to_json() for o in self.options],
                "verdict": {"kind": kind, "condition": cond}}


def _as_int(x: Fraction, what: str) -> int:
    if not integral(x):
        raise NonIntegralInput(f"{what} must be an integer, got {x}")
    return int(x)


def _candidates_for_rank(R: int, D: int, S: int, h2: int, r0: int, a2h2_min: Fraction) -> list[WallCandidate]:
    out = []
    # d0 R < D r0
    for d0 in range(1, (D * r0 - 1) // R + 1):
        top = Fraction(d0 * d0, h2)          # Hodge index: Delta0^2 <= d0^2 / H^2
        s0 = (S * d0) // D + 1               # s0 D > S d0
        while 2 * r0 * s0 - 2 <= top:
            a2h2 = Fraction(2 * (s0 * D - S * d0), r0 * D - R * d0)
            if a2h2 > a2h2_min:
                opts = []
                for q in range(2 * r0 * s0 - 2, math.floor(top) + 1, 2):
                    opts.append(CandidateOption(q, q - top, classify_aux(h2, d0, q)))
                out.append(WallCandidate(r0, d0, s0, a2h2, opts))
            s0 += 1
    return out


def default_workers() -> int:
    raw = os.environ.get("MUKAI_WALLS_THREADS")
    if raw is None:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("MUKAI_WALLS_THREADS must be a positive integer")
    return n


def enumerate_destabilizers(v: MukaiVector, surface: PolarizedSurface | None = None, *,
                            max_rank: Optional[int] = None, a2h2_min: RationalLike = 2,
                            workers: Optional[int] = None) -> list[WallCandidate]:
    """All numerical destabilizers of ``v`` on ``b = 0`` up to rank ``max_rank``.

    ``max_rank`` defaults to ``rank(v) + 2``. The rank range is split across
    ``workers`` threads; the result is sorted by ``(r0, d0, s0)`` whatever
    the split.
    """
    h2 = v.surface.h2
    R = v.r
    D = _as_int(v.d, "Delta.H")
    S = _as_int(v.s, "s")
    if R < 1:
        raise ValueError("v must have positive rank")
    if D <= 0:
        raise ValueError("v must have positive H-degree")
    if v.delta_sq * h2 != v.d * v.d:
        raise ValueError("v must have Delta a multiple of H")
    max_rank = R + 2 if max_rank is None else int(max_rank)
    a2h2_min = frac(a2h2_min)
    workers = default_workers() if workers is None else workers
    ranks = range(1, max_rank + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r0: _candidates_for_rank(R, D, S, h2, r0, a2h2_min), ranks))
    else:
        parts = [_candidates_for_rank(R, D, S, h2, r0, a2h2_min) for r0 in ranks]
    return sorted((c for part in parts for c in part), key=lambda c: c.key)


# -- congruence case tables --------------------------------------------------

@dataclass(frozen=True)
class CaseSurvivor:
    a: int
    b: int
    k: int
    r0: int
    d0: int
    s0: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "k": self.k, "r0": self.r0, "d0": self.d0, "s0": self.s0}


@dataclass(frozen=True)
class CaseReport:
    genus_mod4: int
    param: int
    h2: int
    vector: tuple[int, int, int]          # (R, Delta.H, S)
    survivors: list[CaseSurvivor]

    @property
    def triples(self) -> list[tuple[int, int, int]]:
        return sorted({(c.r0, c.d0, c.s0) for c in self.survivors})

    def to_json(self) -> dict:
        return {"genus_mod4": self.genus_mod4, "param": self.param, "h2": self.h2,
                "vector": list(self.vector), "survivors": [c.to_json() for c in self.survivors]}


def family(genus_mod4: int, param: int) -> tuple[int, int, int, int]:
    """``(H^2, R, Delta.H, S)`` of the vector studied for that genus class.

    ``g = 2s + 1`` (classes 1 and 3, ``v = (2, H, s)``) or ``g = p + 1``
    (class 2, ``v = (4, 2H, p)``).
    """
    if genus_mod4 == 1:
        if param % 2 or param < 4:
            raise ParityMismatch(f"genus class 1 needs s even and >= 4, got {param}")
        return 4 * param, 2, 4 * param, param
    if genus_mod4 == 3:
        if param % 2 == 0 or param < 5:
            raise ParityMismatch(f"genus class 3 needs s odd and >= 5, got {param}")
        return 4 * param, 2, 4 * param, param
    if genus_mod4 == 2:
        if param % 4 != 1 or param < 5:
            raise ParityMismatch(f"genus class 2 needs p = 1 mod 4 and p >= 5, got {param}")
        return 2 * param, 4, 4 * param, param
    raise ParityMismatch(f"genus class must be 1, 2 or 3 (4 | g is not treated), got {genus_mod4}")


def lemma_case_table(genus_mod4: int, s_or_p: int) -> CaseReport:
    """Destabilizers via the ``(a, b, k)`` congruence analysis.

    Write ``k = Delta0.H``, ``c0 = k / H^2`` and ``m = H^2 / 2``; let
    ``s_eff`` be ``s`` for classes 1 and 3 and ``p / 2`` for class 2, so that
    a positive wall means ``s0 > c0 s_eff`` in every family. Then
    ``s0 = (k + a)/4`` is the least integer above ``k/4`` (``1 <= a <= 4``)
    and ``r0 = (k + b)/m`` the least integer above ``k/m`` (``1 <= b <= m``),
    so ``k`` is ``m - b`` or ``2m - b``. A survivor satisfies
    ``r0 s0 < 2 c0^2 s_eff + 1`` and ``s0 - c0 s_eff > r0 - 2 c0``.
    """
    h2, R, D, S = family(genus_mod4, s_or_p)
    m = h2 // 2
    s_eff = Fraction(S * h2, D)
    survivors = []
    for a in range(1, 5):
        for b in range(1, m + 1):
            for k in (m - b, 2 * m - b):
                if k < 1 or (k + a) % 4:
                    continue
                c0 = Fraction(k, h2)
                r0 = (k + b) // m
                s0 = (k + a) // 4
                if not r0 * s0 < 2 * c0 * c0 * s_eff + 1:
                    continue
                if not s0 - c0 * s_eff > r0 - 2 * c0:
                    continue
                survivors.append(CaseSurvivor(a, b, k, r0, k, s0))
    survivors.sort(key=lambda c: (c.a, c.b, c.k))
    return CaseReport(genus_mod4, s_or_p, h2, (R, D, S), survivors)


def family_vector(genus_mod4: int, param: int) -> MukaiVector:
    h2, R, D, S = family(genus_mod4, param)
    return PolarizedSurface(h2).from_degree(R, D, S)


# -- simultaneity of the two rank-one exceptions -------------------------------

@dataclass(frozen=True)
class Simultaneity:
    s: int
    possible_even_squares: list[int]

    @property
    def coexistence(self) -> bool:
        return bool(self.possible_even_squares)

    def to_json(self) -> dict:
        return {"s": self.s, "possible_even_squares": self.possible_even_squares,
                "coexistence": self.coexistence}


def simultaneity_check(s: int) -> Simultaneity:
    """Even values ``>= -2`` that ``(A1 - A2)^2`` could take.

    ``(A1 - A2)^2 = -1 - 1/s - 2t`` with ``t = Omega1.Omega2`` and, by
    Cauchy-Schwarz on the negative definite ``H``-perp,
    ``t^2 <= |Omega1^2| |Omega2^2| = (4s + 1)/(4 s^2)``. So an integer ``n``
    is reachable iff ``|s (n + 1) + 1| <= sqrt(4s + 1)``.
    """
    if s < 4 or s % 2:
        raise ParityMismatch(f"s must be even and >= 4, got {s}")
    rad = 4 * s + 1
    hi = -1 + (math.isqrt(rad) + 1) // s + 1
    found = []
    for n in range(-2, hi + 1, 2):
        x = s * (n + 1) + 1
        if cmp_rational_sqrt(abs(x), rad) != Ordering.GREATER:
            found.append(n)
    return Simultaneity(s, found)


# -- O_X wall -----------------------------------------------------------------

def ox_wall_solutions(s: int, *, rk_max: int = 6, beta_max: RationalLike = 4) -> list[tuple[Fraction, Fraction, int]]:
    """Solutions ``(alpha, beta, rk)`` of ``alpha (alpha + (s + 2) beta) <= 1``.

    ``v(F) = alpha v(O_X) + beta v(E) + (0, N, 0)`` with ``rk = alpha + 2 beta``
    a positive integer and ``beta`` on the grid ``Z / gcd(8, s - 2)``; for
    ``beta > 0`` the slope bound forces ``alpha > 0``. Negative ``beta`` is
    not searched: it is ruled out only in the limit of small ``|b|``.
    """
    if s < 4:
        raise ValueError("s must be >= 4")
    g = math.gcd(8, s - 2)
    beta_max = frac(beta_max)
    out = []
    for rk in range(1, rk_max + 1):
        j = 0
        while Fraction(j, g) <= beta_max:
            beta = Fraction(j, g)
            alpha = rk - 2 * beta
            j += 1
            if beta > 0 and alpha <= 0:
                continue
            if alpha * (alpha + (s + 2) * beta) <= 1:
                out.append((alpha, beta, rk))
    return sorted(out, key=lambda t: (t[2], t[1]))
