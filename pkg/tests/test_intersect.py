import json

import pytest
from hypothesis import given, strategies as st

from mukai_walls.intersect import (MODULI_IMAGE_DIM, QUARTICS_THROUGH_TWO_LINES_DIM, STABILIZER_OF_TWO_LINES_DIM,
                                   DimensionMismatch, NegativeCube, OddCube, TripleTable, blowup_p3_two_lines,
                                   cube, fano_genus, triple)

T = blowup_p3_two_lines()


def test_blowup_examples():
    assert cube(T, (4, -1, -1)) == 44
    assert cube(T, (1, 0, 0)) == 1
    assert cube(T, (2, -1, 0)) == 4
    assert fano_genus(T, (4, -1, -1)) == 23
    assert fano_genus(T, (2, -1, 0)) == 3


def test_expansion_terms():
    # 64 L^3 - 48 L^2 (E1 + E2) + 12 L (E1^2 + E2^2) - (E1^3 + E2^3) = 64 + 0 - 24 + 4
    L, E1, E2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert 64 * triple(T, L, L, L) == 64
    assert -48 * (triple(T, L, L, E1) + triple(T, L, L, E2)) == 0
    assert 12 * (triple(T, L, E1, E1) + triple(T, L, E2, E2)) == -24
    assert -(triple(T, E1, E1, E1) + triple(T, E2, E2, E2)) == 4
    assert triple(T, L, E1, E2) == triple(T, E1, E1, E2) == 0


def test_simple_table():
    t = TripleTable.from_products(["L"], [("L", "L", "L", 2)])
    assert fano_genus(t, (1,)) == 2


def test_errors():
    with pytest.raises(DimensionMismatch):
        triple(T, (1, 0), (1, 0, 0), (1, 0, 0))
    with pytest.raises(OddCube):
        fano_genus(T, (1, 0, 0))
    with pytest.raises(NegativeCube):
        fano_genus(T, (-1, 0, 0))
    with pytest.raises(ValueError):
        TripleTable.from_products(["L"], [("L", "L", "L", 1), ("L", "L", "L", 2)])
    with pytest.raises(ValueError):
        TripleTable.from_products(["L"], [("L", "L", "M", 1)])
    with pytest.raises(ValueError):
        TripleTable.from_products(["L", "L"], [])


def test_dimension_constants():
    assert QUARTICS_THROUGH_TWO_LINES_DIM - STABILIZER_OF_TWO_LINES_DIM == MODULI_IMAGE_DIM


def test_json_roundtrip(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(T.to_dict()))
    assert TripleTable.load(p) == T


vec = st.tuples(*[st.integers(-5, 5)] * 3)


@given(vec, vec, vec)
def test_symmetric(a, b, c):
    v = triple(T, a, b, c)
    assert v == triple(T, b, a, c) == triple(T, c, b, a) == triple(T, a, c, b)


@given(vec, vec, vec, vec)
def test_trilinear(a, b, c, d):
    ab = tuple(x + y for x, y in zip(a, b))
    assert triple(T, ab, c, d) == triple(T, a, c, d) + triple(T, b, c, d)


@given(vec)
def test_genus_relation(d):
    c = cube(T, d)
    if c >= 0 and c % 2 == 0:
        assert 2 * fano_genus(T, d) - 2 == c
