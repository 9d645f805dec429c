import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nokholo.surd import QuadSurd, quadratic_roots, sqrt_rational, squarefree_decompose

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_squarefree():
    assert squarefree_decompose(28) == (2, 7)
    assert squarefree_decompose(49) == (7, 1)
    assert squarefree_decompose(1) == (1, 1)


def test_normalisation():
    assert QuadSurd(1, 2, 4) == QuadSurd(5)
    assert QuadSurd(0, 1, 12) == QuadSurd(0, 2, 3)
    assert QuadSurd(3, 0, 7).is_rational
    assert sqrt_rational(Fraction(7, 4)) == QuadSurd(0, Fraction(1, 2), 7)


def test_root_of_klm_quadratic():
    lo, hi = quadratic_roots(1, -8, 9)
    assert lo == QuadSurd(4, -1, 7)
    assert hi == QuadSurd(4, 1, 7)
    assert lo.minimal_polynomial() == (9, -8, 1)
    assert abs(float(lo) - (4 - math.sqrt(7))) < 1e-15


def test_comparisons_against_rationals():
    mu = QuadSurd(4, -1, 7)
    assert Fraction(1354, 1000) < mu < Fraction(1355, 1000)
    assert mu > 0 and mu < 3
    assert not mu == Fraction(4)


def test_mixed_field_comparison():
    assert QuadSurd(0, 1, 2) < QuadSurd(0, 1, 3)
    assert QuadSurd(1, 1, 2) > QuadSurd(0, 1, 5)  # 2.414 > 2.236
    with pytest.raises(ValueError):
        QuadSurd(0, 1, 2) + QuadSurd(0, 1, 3)


def test_isolating_interval_contains_value():
    x = QuadSurd(Fraction(1, 3), Fraction(-5, 7), 11)
    lo, hi = x.isolating_interval(40)
    assert lo <= x <= hi
    assert hi - lo < Fraction(1, 2 ** 39)


@given(rationals, rationals, rationals, rationals, st.sampled_from([2, 3, 5, 7, 13]))
def test_field_operations_match_floats(a, b, c, e, d):
    x, y = QuadSurd(a, b, d), QuadSurd(c, e, d)
    for exact, approx in ((x + y, float(x) + float(y)), (x * y, float(x) * float(y)),
                          (x - y, float(x) - float(y))):
        assert abs(float(exact) - approx) < 1e-9 * (1 + abs(approx))
    if y:
        assert (x / y) * y == x


@given(rationals, rationals, st.sampled_from([2, 3, 6, 7]))
def test_sign_is_exact(a, b, d):
    x = QuadSurd(a, b, d)
    assert x.sign() == (float(x) > 0) - (float(x) < 0) or abs(float(x)) < 1e-12
    assert (x * x.conjugate()).is_rational
