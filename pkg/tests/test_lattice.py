from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nokholo.lattice import (
    INFINITE,
    ConeSpec,
    DivisorClass,
    ForeignClassError,
    IntersectionForm,
    PreconditionError,
    SurfaceData,
    cone_contains,
    cone_exit_time,
    intersect,
    pull_back,
    pullback_embed,
)
from nokholo.surd import QuadSurd

from oracles import bisect_exit

rat = st.fractions(min_value=-12, max_value=12, max_denominator=6)


def classes(s):
    return st.lists(rat, min_size=s.rank, max_size=s.rank).map(s.divisor)


# -- examples ----------------------------------------------------------------


def test_exe_pairing(exe):
    f1, f2, delta = exe.basis("f1"), exe.basis("f2"), exe.basis("Delta")
    assert intersect(f1, f2, exe) == 1
    # Curves of genus 1 on an abelian surface: 2g - 2 = C^2 = 0.
    for c in (f1, f2, delta):
        assert intersect(c, c, exe) == 0
    assert intersect(exe.zero(), delta, exe) == 0
    assert intersect(9 * f1 + 3 * f2, f1 + f2 + delta, exe) == 24


def test_cone_membership_examples(exe):
    f1 = exe.basis("f1")
    assert cone_contains(exe.nef, f1, exe)
    assert cone_contains(exe.nef, exe.zero(), exe)
    assert not cone_contains(exe.nef, -f1, exe)


def test_exit_time_on_exe(exe):
    b, c = exe.parse("9f1+3f2"), exe.parse("f1+f2+Delta")
    # (B - tC)^2 = 54 - 48t + 6t^2, so t^2 - 8t + 9 = 0.
    assert intersect(b, b, exe) == 54 and intersect(b, c, exe) == 24
    assert intersect(c, c, exe) == 6
    mu = cone_exit_time(exe.nef, b, c, exe)
    assert mu == QuadSurd(4, -1, 7)
    assert mu.minimal_polynomial() == (9, -8, 1)
    lo, hi = bisect_exit(exe.nef, b, c, exe)
    assert lo <= mu <= hi


def test_exit_time_infinite(exe):
    h = exe.parse("f1+f2+Delta")
    assert cone_exit_time(exe.nef, h, -h, exe) is INFINITE


def test_exit_time_polyhedral(blowup):
    b, c = blowup.parse("2H-E"), blowup.parse("H-E")
    assert cone_exit_time(blowup.nef, b, c, blowup) == 1
    lo, hi = bisect_exit(blowup.nef, b, c, blowup)
    assert lo <= 1 <= hi


def test_exit_time_errors(exe):
    with pytest.raises(PreconditionError, match="base outside cone"):
        cone_exit_time(exe.nef, -exe.basis("f1"), exe.basis("f2"), exe)
    with pytest.raises(PreconditionError):
        cone_exit_time(exe.nef, exe.basis("f1"), exe.zero(), exe)


def test_foreign_class(exe, blowup):
    with pytest.raises(ForeignClassError, match="foreign class"):
        intersect(exe.basis("f1"), blowup.basis("H"), exe)
    with pytest.raises(ForeignClassError):
        exe.basis("f1") + blowup.basis("H")


def test_parse_and_format(exe, blowup):
    assert exe.format(exe.parse("9f1 + 3*f2 - 1/2Delta")) == "9f1+3f2-1/2*Delta"
    assert blowup.parse("2H-E") == blowup.divisor([2, -1])
    assert blowup.format(blowup.zero()) == "0"
    with pytest.raises(ValueError):
        exe.parse("9g1")


def test_surface_validation():
    form = IntersectionForm(((1, 0), (0, -1)))
    good = dict(lattice_id="x", basis_names=("H", "E"), form=form,
                nef=ConeSpec.polyhedral([DivisorClass((0, 1), "x"), DivisorClass((1, -1), "x")]),
                pseff=ConeSpec.polyhedral([DivisorClass((1, -1), "x"), DivisorClass((1, 0), "x")]))
    SurfaceData(**good, negative_curves=(DivisorClass((0, 1), "x"),))
    with pytest.raises(ValueError, match="non-negative self-intersection"):
        SurfaceData(**good, negative_curves=(DivisorClass((1, 0), "x"),))
    with pytest.raises(ValueError, match="symmetric"):
        IntersectionForm(((1, 2), (0, 1)))
    with pytest.raises(ValueError, match="degenerate"):
        IntersectionForm(((1, 1), (1, 1)))
    with pytest.raises(ValueError, match="guard"):
        IntersectionForm(tuple(tuple(int(i == j) for j in range(17)) for i in range(17)))


def test_pullback_examples(exe):
    same = pullback_embed(exe, 1)
    assert same.form.matrix == exe.form.matrix
    two = pullback_embed(exe, 2)
    f1, f2 = pull_back(exe.basis("f1"), two), pull_back(exe.basis("f2"), two)
    assert intersect(f1, f2, two) == 2


# -- properties -------------------------------------------------------------


@settings(max_examples=100)
@given(st.data(), rat, rat)
def test_bilinear_symmetric(exe, data, a, b):
    x, y, z = (data.draw(classes(exe)) for _ in range(3))
    assert intersect(a * x + b * y, z, exe) == a * intersect(x, z, exe) + b * intersect(y, z, exe)
    assert intersect(x, y, exe) == intersect(y, x, exe)


@settings(max_examples=100)
@given(st.data(), st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_cone_convexity(exe, blowup, data, lam):
    for s in (exe, blowup):
        for cone in (s.nef, s.pseff):
            x, y = data.draw(classes(s)), data.draw(classes(s))
            if cone_contains(cone, x, s) and cone_contains(cone, y, s):
                assert cone_contains(cone, lam * x + (1 - lam) * y, s)


@settings(max_examples=100)
@given(st.data())
def test_exit_time_consistency(exe, blowup, data):
    for s in (exe, blowup):
        b, c = data.draw(classes(s)), data.draw(classes(s))
        if c.is_zero() or not cone_contains(s.nef, b, s):
            continue
        mu = cone_exit_time(s.nef, b, c, s)
        if mu is INFINITE:
            assert cone_contains(s.nef, b - 1000 * c, s)
            continue
        lo, hi = mu.isolating_interval(30)
        delta = Fraction(1, 2 ** 20)
        if lo - delta >= 0:
            assert cone_contains(s.nef, b - (lo - delta) * c, s)
        assert not cone_contains(s.nef, b - (hi + delta) * c, s)


@settings(max_examples=100)
@given(st.data(), st.sampled_from([1, 2, 3, 5]))
def test_pullback_invariance(exe, blowup, data, m):
    for s in (exe, blowup):
        t = pullback_embed(s, m)
        x, y = data.draw(classes(s)), data.draw(classes(s))
        px, py = pull_back(x, t), pull_back(y, t)
        assert intersect(px, py, t) == m * intersect(x, y, s)
        assert cone_contains(t.nef, px, t) == cone_contains(s.nef, x, s)
        assert cone_contains(t.pseff, px, t) == cone_contains(s.pseff, x, s)
        if cone_contains(s.nef, x, s) and not y.is_zero():
            assert cone_exit_time(t.nef, px, py, t) == cone_exit_time(s.nef, x, y, s)
