"""Triple intersection numbers on a divisor basis of a threefold.

A :class:`TripleTable` stores the symmetric 3-tensor ``t[i][j][k] =
D_i . D_j . D_k``; unspecified products are zero.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


class OddCube(ValueError):
    pass


class NegativeCube(ValueError):
    pass


@dataclass(frozen=True)
class TripleTable:
    basis_names: tuple[str, ...]
    t: dict[tuple[int, int, int], int]

    @classmethod
    def from_products(cls, basis: Sequence[str], products: Iterable[tuple[str, str, str, int]]) -> "TripleTable":
        index = {name: i for i, name in enumerate(basis)}
        if len(index) != len(basis):
            raise ValueError("duplicate basis names")
        t: dict[tuple[int, int, int], int] = {}
        for i, j, k, value in products:
            try:
                key = (index[i], index[j], index[k])
            except KeyError as exc:
                raise ValueError(f"unknown basis element {exc.args[0]!r}") from None
            for perm in set(itertools.permutations(key)):
                if t.get(perm, value) != value:
                    raise ValueError(f"conflicting values for {i}.{j}.{k}")
                t[perm] = int(value)
        # zero entries are implicit
        return cls(tuple(basis), {k: v for k, v in t.items() if v})

    @classmethod
    def from_dict(cls, data: dict) -> "TripleTable":
        return cls.from_products(data["basis"], ((p["i"], p["j"], p["k"], p["v"]) for p in data["products"]))

    @classmethod
    def load(cls, path: str | Path) -> "TripleTable":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        seen = sorted({tuple(sorted(key)) for key, v in self.t.items() if v})
        return {"basis": list(self.basis_names),
                "products": [{"i": self.basis_names[a], "j": self.basis_names[b], "k": self.basis_names[c],
                              "v": self.t[(a, b, c)]} for a, b, c in seen]}

    def __getitem__(self, key: tuple[int, int, int]) -> int:
        return self.t.get(key, 0)


def triple(table: TripleTable, d1: Sequence[int], d2: Sequence[int], d3: Sequence[int]) -> int:
    n = len(table.basis_names)
    for d in (d1, d2, d3):
        if len(d) != n:
            raise DimensionMismatch(f"divisor has {len(d)} coordinates, basis has {n}")
    return sum(d1[i] * d2[j] * d3[k] * v for (i, j, k), v in table.t.items())


def cube(table: TripleTable, d: Sequence[int]) -> int:
    return triple(table, d, d, d)


def fano_genus(table: TripleTable, anticanonical: Sequence[int]) -> int:
    """Genus ``g`` of a Fano threefold from ``2g - 2 = (-K)^3``."""
    c = cube(table, anticanonical)
    if c < 0:
        raise NegativeCube(f"(-K)^3 = {c} is negative")
    if c % 2:
        raise OddCube(f"(-K)^3 = {c} is odd; the table is inconsistent")
    return c // 2 + 1


def blowup_p3_two_lines() -> TripleTable:
    """Blow-up of P^3 along two skew lines, basis ``L, E1, E2``.

    ``L^3 = 1``, ``L^2 E_i = 0``, ``L E_i^2 = -1``, ``E_i^3 = -2``, and every
    product involving both ``E1`` and ``E2`` vanishes (the lines are
    disjoint). The anticanonical class is ``4L - E1 - E2`` with cube 44.

    Quartics through the two lines form a projective space of dimension
    24; projectivities preserving the pair of lines form a group of
    dimension 7; their isomorphism classes sweep out a 17-dimensional
    family of polarized K3 surfaces.
    """
    return TripleTable.from_products(
        ["L", "E1", "E2"],
        [("L", "L", "L", 1),
         ("L", "L", "E1", 0), ("L", "L", "E2", 0),
         ("L", "E1", "E1", -1), ("L", "E2", "E2", -1),
         ("E1", "E1", "E1", -2), ("E2", "E2", "E2", -2)],
    )


QUARTICS_THROUGH_TWO_LINES_DIM = 24
STABILIZER_OF_TWO_LINES_DIM = 7
MODULI_IMAGE_DIM = 17

BUILTIN_TABLES = {"blowup-p3-two-lines": blowup_p3_two_lines}
