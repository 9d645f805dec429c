from math import comb

import pytest
from hypothesis import given, strategies as st

from nokholo.cohomology import (
    EllipticCurve,
    MultidegreeRay,
    ProjectiveSpace,
    cohomology_elliptic,
    cohomology_projective_space,
    kunneth_table,
    parse_factors,
    parse_ray,
)

from oracles import finite_difference, p2p2_sections


def test_projective_space_examples():
    assert cohomology_projective_space(2, 3) == (10, 0, 0)
    assert cohomology_projective_space(2, -3) == (0, 0, 1)
    assert cohomology_projective_space(1, -1) == (0, 0)


@given(st.integers(1, 5), st.integers(-15, 15))
def test_projective_space_euler_characteristic(m, a):
    h = cohomology_projective_space(m, a)
    chi = sum((-1) ** i * x for i, x in enumerate(h))
    # chi(O(a)) = C(a + m, m) as a polynomial in a.
    poly = 1
    for j in range(1, m + 1):
        poly *= (a + j)
    assert chi * _fact(m) == poly


def _fact(m):
    out = 1
    for j in range(2, m + 1):
        out *= j
    return out


@given(st.integers(-20, 20), st.booleans())
def test_elliptic_serre_duality(e, trivial):
    h0, h1 = cohomology_elliptic(e, trivial)
    assert (h1, h0) == cohomology_elliptic(-e, trivial)
    assert h0 - h1 == e  # Riemann-Roch


def test_elliptic_examples():
    assert cohomology_elliptic(3, True) == (3, 0)
    assert cohomology_elliptic(0, True) == (1, 1)
    assert cohomology_elliptic(0, False) == (0, 0)
    assert cohomology_elliptic(-2, True) == (0, 2)


def test_p2p2_table():
    table = kunneth_table(parse_factors("P2xP2"), parse_ray("3,1"), 40)
    assert table.d == 4
    assert table.slice(0)[:4] == [1, 30, 168, 550]
    assert all(p2p2_sections(n) == table.entries[n][0] for n in range(41))
    assert all(x == 0 for row in table.entries for x in row[1:])
    assert table.entries[0] == (1, 0, 0, 0, 0)


def test_exp1_table():
    table = kunneth_table(parse_factors("ExP1"), parse_ray("0,1"), 12)
    for n in range(13):
        assert table.entries[n] == (n + 1, n + 1, 0)


def test_structure_sheaf_row():
    table = kunneth_table([EllipticCurve(False), ProjectiveSpace(3)], MultidegreeRay((0, 2)), 0)
    assert table.entries == ((1, 1, 0, 0, 0),)


@pytest.mark.parametrize("spec,ray", [("P2xP2", "3,1"), ("ExP1", "0,1"), ("P1xP1", "2,-3"),
                                      ("ExP2", "2,-1"), ("P3", "-2")])
def test_euler_characteristic_polynomial(spec, ray):
    table = kunneth_table(parse_factors(spec), parse_ray(ray), 40)
    chi = [table.euler_characteristic(n) for n in range(41)]
    assert not any(finite_difference(chi, table.d + 1))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_ample_rays_have_no_higher_cohomology(a, b, e):
    table = kunneth_table([ProjectiveSpace(2), ProjectiveSpace(1), EllipticCurve()],
                          MultidegreeRay((a, b, e)), 6)
    assert all(x == 0 for row in table.entries[1:] for x in row[1:])


def test_serre_duality_at_factor_level():
    plus = kunneth_table([EllipticCurve()], MultidegreeRay((2,)), 8)
    minus = kunneth_table([EllipticCurve()], MultidegreeRay((-2,)), 8)
    for n in range(1, 9):
        assert plus.entries[n] == tuple(reversed(minus.entries[n]))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_factors("P2xQ3")
    assert [str(f) for f in parse_factors("P3xE'xE")] == ["P3", "E'", "E"]
    assert comb(5, 2) == 10
