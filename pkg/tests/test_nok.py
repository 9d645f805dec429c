from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nokholo.lattice import PreconditionError, intersect, pull_back, pullback_embed
from nokholo.nok import (
    BoundaryKind,
    FlagOnSurface,
    SliceRegion,
    assemble_slice_body,
    build_klm_family,
    check_body,
    classify_boundary,
    epsilon_sup,
    evaluate_boundary,
    is_split_ample,
    nok_surface_body,
    slice_region,
    split_restriction,
)
from nokholo.surd import QuadSurd
from nokholo.zariski import zariski_decompose

from oracles import bisect_exit, shoelace

KLM_Q = (0, 6, 1, -9, -8, 9)
GRID = [Fraction(k, 10) for k in range(5)]


def _region(fam, grid=GRID):
    return slice_region(fam.surface, fam.base, fam.wall, fam.curve, fam.epsilon, grid)


# -- surface bodies ----------------------------------------------------------


def test_exe_trapezoid(exe):
    b, c = exe.parse("9f1+3f2"), exe.parse("f1+f2+Delta")
    body = nok_surface_body(exe, b, FlagOnSurface(c))
    mu = QuadSurd(4, -1, 7)
    assert body.extent == mu
    assert len(body.pieces) == 1
    p = body.pieces[0]
    assert (p.alpha.slope, p.alpha.intercept) == (0, 0)
    assert (p.beta.slope, p.beta.intercept) == (-6, 24)
    assert set(body.vertices) == {(0, 0), (0, 24), (mu, 0), (mu, 24 - 6 * mu)}
    assert body.area() == 27 == intersect(b, b, exe) / 2
    assert abs(shoelace(body.vertices) - 27) < 1e-9
    check_body(body)


def test_blowup_generic_point(blowup):
    body = nok_surface_body(blowup, blowup.parse("2H-E"), FlagOnSurface(blowup.parse("H-E")))
    assert body.breakpoints == (0, 1, 2)
    assert body.beta(Fraction(1, 2)) == 1 and body.beta(Fraction(3, 2)) == Fraction(1, 2)
    assert all(body.alpha(Fraction(k, 4)) == 0 for k in range(9))
    assert set(body.vertices) == {(0, 0), (0, 1), (1, 1), (2, 0)}
    assert body.area() == Fraction(3, 2)
    check_body(body)
    # Hand computation: N_t = (t - 1)E on [1, 2].
    for k in range(9):
        t = Fraction(k, 4)
        dec = zariski_decompose(blowup, blowup.parse("2H-E") - t * blowup.parse("H-E"))
        assert dec.coefficient(0) == max(Fraction(0), t - 1)


def test_blowup_point_on_exceptional_curve(blowup):
    flag = FlagOnSurface(blowup.parse("H-E"), point_on_negative_curve=0)
    body = nok_surface_body(blowup, blowup.parse("2H-E"), flag)
    for k in range(9):
        t = Fraction(k, 4)
        assert body.alpha(t) == max(Fraction(0), t - 1)
        assert body.beta(t) == 1
    assert body.area() == Fraction(3, 2)
    check_body(body)


def test_body_errors(exe, blowup):
    c = exe.parse("f1+f2+Delta")
    with pytest.raises(PreconditionError, match="reduce to nef part first"):
        nok_surface_body(blowup, blowup.parse("H+2E"), FlagOnSurface(blowup.parse("H-E")))
    with pytest.raises(PreconditionError, match="not big"):
        nok_surface_body(exe, exe.parse("f1"), FlagOnSurface(c))
    with pytest.raises(PreconditionError):
        nok_surface_body(exe, exe.parse("9f1+3f2"), FlagOnSurface(exe.zero()))


pos = st.fractions(min_value=Fraction(1, 4), max_value=8, max_denominator=4)


@settings(max_examples=60)
@given(pos, pos, pos)
def test_area_identity_exe(a, b, c):
    exe = build_klm_family(4).surface
    d = exe.divisor([a, b, c])
    if not intersect(d, d, exe) > 0:
        return
    body = nok_surface_body(exe, d, FlagOnSurface(exe.parse("f1+f2+Delta")))
    assert body.area() == intersect(d, d, exe) / 2
    check_body(body)


@settings(max_examples=60)
@given(st.fractions(min_value=1, max_value=10, max_denominator=4),
       st.fractions(min_value=0, max_value=10, max_denominator=4), st.booleans())
def test_area_identity_blowup(blowup, a, e, on_curve):
    if e > a:
        return
    d = blowup.divisor([a, -e])
    if intersect(d, d, blowup) <= 0:
        return
    flag = FlagOnSurface(blowup.parse("H-E"), 0 if on_curve else None)
    body = nok_surface_body(blowup, d, flag)
    assert body.area() == intersect(d, d, blowup) / 2
    check_body(body)


# -- klm family ----------------------------------------------------------------


def test_build_klm_family():
    fam = build_klm_family(4)
    s = fam.surface
    assert fam.base == s.parse("9f1+3f2")
    assert fam.wall == s.parse("9f1")
    assert fam.curve == s.parse("f1+f2+Delta")
    assert fam.epsilon == Fraction(1, 2)
    seven = build_klm_family(7)
    assert (seven.base, seven.wall, seven.curve, seven.epsilon) == \
        (fam.base, fam.wall, fam.curve, fam.epsilon)
    assert build_klm_family(4, bidegree=(1, 1)).base == s.parse("3f1+3f2")
    with pytest.raises(PreconditionError):
        build_klm_family(3)


def test_epsilon():
    assert epsilon_sup() == 1
    assert split_restriction(0) == (3, 3) and is_split_ample(0)
    assert split_restriction(Fraction(1, 2)) == (Fraction(3, 2), 3) and is_split_ample(Fraction(1, 2))
    assert split_restriction(1) == (0, 3) and not is_split_ample(1)


def _hand_expanded_square(s, t):
    # (B0 - sW - tC)^2 = 2(ab + ac + bc) with a = 9 - 9s - t, b = 3 - t, c = -t.
    a, b, c = 9 - 9 * s - t, 3 - t, -t
    return 2 * (a * b + a * c + b * c)


def test_klm_boundary_polynomial():
    fam = build_klm_family(4)
    region = _region(fam)
    assert region.boundary_polynomial == KLM_Q
    for s in GRID:
        for t in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
            assert _hand_expanded_square(s, t) == 6 * evaluate_boundary(KLM_Q, s, t)
    x, mu0 = region.samples[0]
    assert x == 0 and mu0 == QuadSurd(4, -1, 7)
    assert abs(float(mu0) - 1.354248688) < 1e-9
    s = fam.surface
    for x, mu in region.samples + region.holdout:
        lo, hi = bisect_exit(s.nef, fam.base - x * fam.wall, fam.curve, s)
        assert lo <= mu <= hi
        assert evaluate_boundary(KLM_Q, x, mu) == 0


def test_monotone_exit_times():
    region = _region(build_klm_family(4), [Fraction(k, 20) for k in range(10)])
    mus = [mu for _, mu in region.samples]
    assert all(x >= y for x, y in zip(mus, mus[1:]))


def test_classify_klm():
    verdict = classify_boundary(_region(build_klm_family(4)))
    assert verdict.kind is BoundaryKind.NONDEGENERATE_CONIC
    assert verdict.determinant == Fraction(27, 4)
    assert verdict.matrix == ((0, 3, Fraction(-9, 2)), (3, 1, -4), (Fraction(-9, 2), -4, 9))


def _fake_region(q, points):
    fam = build_klm_family(4)
    return SliceRegion(fam.surface, fam.base, fam.wall, fam.curve, Fraction(1, 2),
                       tuple(q), tuple(points), ())


def test_classify_lines():
    line = _fake_region((0, 0, 0, 1, 1, -1), [(Fraction(k, 4), 1 - Fraction(k, 4)) for k in range(5)])
    assert classify_boundary(line).kind is BoundaryKind.PIECEWISE_LINEAR
    pts = [(Fraction(1), Fraction(1)), (Fraction(2), Fraction(2)), (Fraction(3), Fraction(3)),
           (Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))]
    pair = _fake_region((2, -3, 1, 0, 0, 0), pts)
    verdict = classify_boundary(pair)
    assert verdict.kind is BoundaryKind.PIECEWISE_LINEAR and verdict.determinant == 0
    assert sorted(verdict.pieces) == sorted(["s - t", "2*s - t"])
    with pytest.raises(PreconditionError):
        classify_boundary(_fake_region((0,) * 6, pts))


def test_polyhedral_controls(blowup):
    b0, c = blowup.parse("2H-E"), blowup.parse("H-E")
    grid = [Fraction(k, 10) for k in range(5)]
    flat = slice_region(blowup, b0, blowup.parse("H"), c, Fraction(1, 2), grid)
    assert all(mu.is_rational for _, mu in flat.samples)
    assert flat.boundary_polynomial == (0, 0, 0, 0, 1, -1)
    assert classify_boundary(flat).kind is BoundaryKind.PIECEWISE_LINEAR
    sloped = slice_region(blowup, b0, c, c, Fraction(1, 2), grid)
    assert sloped.boundary_polynomial == (0, 0, 0, 1, 1, -1)  # mu(s) = 1 - s
    assert classify_boundary(sloped).kind is BoundaryKind.PIECEWISE_LINEAR


def test_slice_errors(exe):
    fam = build_klm_family(4)
    with pytest.raises(PreconditionError, match="insufficient samples"):
        _region(fam, GRID[:4])
    with pytest.raises(PreconditionError):
        _region(fam, GRID + [Fraction(1, 2)])


def test_assemble_slice_body():
    fam = build_klm_family(4)
    region = _region(fam)
    bodies = assemble_slice_body(region)
    assert [x for x, _ in bodies] == GRID
    s = fam.surface
    for (x, body), (_, mu) in zip(bodies, region.samples):
        assert body.extent == mu
        b = region.family(x)
        assert body.area() == intersect(b, b, s) / 2
    assert bodies[0][1].area() == 27
    empty = SliceRegion(s, fam.base, fam.wall, fam.curve, fam.epsilon, KLM_Q, (), ())
    assert assemble_slice_body(empty) == []


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_verdict_invariant_under_pullback(m):
    fam = build_klm_family(4)
    t = pullback_embed(fam.surface, m)
    region = slice_region(t, pull_back(fam.base, t), pull_back(fam.wall, t),
                          pull_back(fam.curve, t), fam.epsilon, GRID)
    assert region.boundary_polynomial == KLM_Q
    assert classify_boundary(region).kind is BoundaryKind.NONDEGENERATE_CONIC
