import random
from decimal import Decimal, getcontext
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mukai_walls.exact import (Ordering, cmp_rational_sqrt, floor_half_sum_sqrt, floor_sqrt, fmt, frac,
                               lower_sqrt_approx)


def test_frac():
    assert frac(3) == 3 and frac("7/2") == F(7, 2) and frac(F(1, 3)) == F(1, 3)
    with pytest.raises(TypeError):
        frac(0.5)
    with pytest.raises(TypeError):
        frac(True)


def test_fmt():
    assert fmt(0) == "0/1" and fmt(F(-6, 4)) == "-3/2" and fmt(16) == "16/1"


def test_cmp_rational_sqrt_examples():
    assert cmp_rational_sqrt(2, 4) == Ordering.EQUAL
    assert cmp_rational_sqrt(F(101, 10), 104) == Ordering.LESS
    assert cmp_rational_sqrt(-1, 2) == Ordering.LESS
    assert cmp_rational_sqrt(0, 0) == Ordering.EQUAL
    with pytest.raises(ValueError):
        cmp_rational_sqrt(1, -1)


def test_cmp_rational_sqrt_vs_decimal():
    getcontext().prec = 60
    rng = random.Random(1)
    for _ in range(1000):
        x = F(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
        n = F(rng.randint(0, 10 ** 8), rng.randint(1, 10 ** 4))
        ref = Decimal(x.numerator) / Decimal(x.denominator)
        root = (Decimal(n.numerator) / Decimal(n.denominator)).sqrt()
        diff = ref - root
        if abs(diff) > Decimal("1e-40"):
            assert cmp_rational_sqrt(x, n) == (Ordering.GREATER if diff > 0 else Ordering.LESS)


nonneg = st.fractions(min_value=0, max_value=1000, max_denominator=50)
anyq = st.fractions(min_value=-100, max_value=100, max_denominator=50)


@given(anyq, nonneg)
def test_cmp_antisymmetric(x, n):
    # x vs sqrt(n) is the negation of -x vs -sqrt(n), computed through squares
    got = cmp_rational_sqrt(x, n)
    if x >= 0:
        assert got == Ordering((x * x > n) - (x * x < n))
    else:
        assert got == Ordering.LESS or (n == 0 and x == 0)


@given(anyq, anyq, nonneg)
def test_cmp_transitive(x, y, n):
    # x <= y and y <= sqrt(n) imply x <= sqrt(n)
    if x <= y and cmp_rational_sqrt(y, n) != Ordering.GREATER:
        assert cmp_rational_sqrt(x, n) != Ordering.GREATER
    if x >= y and cmp_rational_sqrt(y, n) != Ordering.LESS:
        assert cmp_rational_sqrt(x, n) != Ordering.LESS


@given(nonneg)
def test_floor_sqrt(n):
    m = floor_sqrt(n)
    assert m * m <= n < (m + 1) ** 2


@given(anyq, nonneg)
def test_floor_half_sum_sqrt(x, n):
    m = floor_half_sum_sqrt(x, n)
    assert cmp_rational_sqrt(2 * m - 2 * x, n) != Ordering.GREATER
    assert cmp_rational_sqrt(2 * (m + 1) - 2 * x, n) == Ordering.GREATER


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=1000))
def test_lower_sqrt_approx(n):
    q = lower_sqrt_approx(n)
    assert 0 <= q and q * q <= n
    assert (q + F(2, 1 << 20) * (1 + q)) ** 2 > n
