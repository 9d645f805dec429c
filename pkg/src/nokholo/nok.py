"""Newton-Okounkov bodies on surfaces and the slice family on E x E.

A body for a (curve, point) flag is described by functions ``alpha <= beta``
over ``[0, mu]``; both are affine between breakpoints.  The slice family
``B(s, t) = B0 - s*W - t*C`` is studied through its exit times ``mu(s)``, which
lie on an algebraic curve ``Q(s, t) = 0`` of degree at most two.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .lattice import (
    INFINITE,
    DivisorClass,
    PreconditionError,
    SurfaceData,
    cone_contains,
    cone_exit_time,
    intersect,
)
from .linalg import determinant, nullspace, primitive_integer_vector
from .surd import QuadSurd
from .zariski import chamber_support, is_pseudoeffective

FIXTURES = Path(__file__).with_name("fixtures")

# Fixed monomial order for boundary polynomials Q(s, t).
MONOMIALS = ("s^2", "s*t", "t^2", "s", "t", "1")
_EXPONENTS = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


@dataclass(frozen=True)
class FlagOnSurface:
    curve_class: DivisorClass
    point_on_negative_curve: int | None = None


@dataclass(frozen=True)
class Affine:
    """``slope*t + intercept``."""

    slope: Fraction
    intercept: Fraction

    def __call__(self, t):
        return self.intercept + self.slope * t


@dataclass(frozen=True)
class Piece:
    lo: QuadSurd
    hi: QuadSurd
    alpha: Affine
    beta: Affine


@dataclass(frozen=True)
class NokBody:
    pieces: tuple[Piece, ...]

    @property
    def breakpoints(self) -> tuple[QuadSurd, ...]:
        return (self.pieces[0].lo,) + tuple(p.hi for p in self.pieces)

    @property
    def extent(self) -> QuadSurd:
        return self.pieces[-1].hi

    def alpha(self, t):
        return self._piece_at(t).alpha(t)

    def beta(self, t):
        return self._piece_at(t).beta(t)

    def _piece_at(self, t) -> Piece:
        for p in self.pieces:
            if p.lo <= t <= p.hi:
                return p
        raise ValueError(f"t = {t} outside [0, {self.extent}]")

    def area(self) -> QuadSurd:
        total = QuadSurd(0)
        for p in self.pieces:
            ds = p.beta.slope - p.alpha.slope
            di = p.beta.intercept - p.alpha.intercept
            total = total + ds * (p.hi * p.hi - p.lo * p.lo) / 2 + di * (p.hi - p.lo)
        return total

    @property
    def vertices(self) -> tuple[tuple[QuadSurd, QuadSurd], ...]:
        """Corners of the polygon, counter-clockwise from ``(0, alpha(0))``."""
        lower = [(p.lo, p.alpha(p.lo)) for p in self.pieces]
        lower.append((self.extent, self.pieces[-1].alpha(self.extent)))
        upper = [(self.extent, self.pieces[-1].beta(self.extent))]
        upper += [(p.lo, p.beta(p.lo)) for p in reversed(self.pieces)]
        ring = []
        for v in lower + upper:
            if not ring or ring[-1] != v:
                ring.append(v)
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring.pop()
        return tuple(_drop_collinear(ring))


def _drop_collinear(ring):
    out = list(ring)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for k in range(len(out)):
            a, b, c = out[k - 1], out[k], out[(k + 1) % len(out)]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cross == 0:
                del out[k]
                changed = True
                break
    return out


def check_body(body: NokBody) -> None:
    """Raise ``AssertionError`` unless the body invariants hold."""
    assert body.pieces[0].lo == 0
    assert body.alpha(QuadSurd(0)) >= 0
    for p in body.pieces:
        assert p.lo < p.hi
        for t in (p.lo, p.hi):
            assert p.alpha(t) <= p.beta(t)
    slopes_a = [p.alpha.slope for p in body.pieces]
    slopes_b = [p.beta.slope for p in body.pieces]
    assert all(x >= 0 for x in slopes_a), "alpha must be non-decreasing"
    assert slopes_a == sorted(slopes_a), "alpha must be convex"
    assert slopes_b == sorted(slopes_b, reverse=True), "beta must be concave"
    for p, q in zip(body.pieces, body.pieces[1:]):
        assert p.alpha(p.hi) == q.alpha(q.lo) and p.beta(p.hi) == q.beta(q.lo)


def nok_surface_body(s: SurfaceData, b: DivisorClass, flag: FlagOnSurface) -> NokBody:
    """Body of a big and nef class with respect to a (curve, point) flag."""
    s.own(b)
    c = s.own(flag.curve_class)
    if c.is_zero():
        raise PreconditionError("flag curve class is zero")
    if not is_pseudoeffective(s, c):
        raise PreconditionError("flag curve is not pseudoeffective")
    if not cone_contains(s.nef, b, s):
        raise PreconditionError("reduce to nef part first")
    if intersect(b, b, s) <= 0:
        raise PreconditionError("not big")
    mu = cone_exit_time(s.pseff, b, c, s)
    if mu is INFINITE:
        raise PreconditionError("flag curve direction never leaves the pseff cone")

    if flag.point_on_negative_curve is None:
        mults = {}
    else:
        if not 0 <= flag.point_on_negative_curve < len(s.negative_curves):
            raise PreconditionError("flag point names an unknown negative curve")
        mults = s.point_multiplicities
    curves = s.negative_curves
    pieces = []
    t0 = Fraction(0)
    while True:
        base = b - t0 * c
        support, a0, a1 = chamber_support(s, base, c)
        # Coefficient of curve j on this chamber: a0 + (t - t0)*a1.
        p0, p1 = base, -c
        for i, j in enumerate(support):
            p0 = p0 - a0[i] * curves[j]
            p1 = p1 - a1[i] * curves[j]
        ends = [mu]
        for j, cj in enumerate(curves):
            if j not in support:
                g0, g1 = intersect(p0, cj, s), intersect(p1, cj, s)
                if g1 < 0:
                    ends.append(QuadSurd(t0 - g0 / g1))
        for i in range(len(support)):
            if a1[i] < 0:
                ends.append(QuadSurd(t0 - a0[i] / a1[i]))
        t1 = min(e for e in ends if e > t0)
        al0 = sum((a0[i] * mults.get(j, 0) for i, j in enumerate(support)), Fraction(0))
        al1 = sum((a1[i] * mults.get(j, 0) for i, j in enumerate(support)), Fraction(0))
        pc0, pc1 = intersect(p0, c, s), intersect(p1, c, s)
        alpha = Affine(al1, al0 - al1 * t0)
        beta = Affine(al1 + pc1, al0 + pc0 - (al1 + pc1) * t0)
        pieces.append(Piece(QuadSurd(t0), QuadSurd.coerce(t1), alpha, beta))
        if t1 == mu:
            break
        t0 = t1.to_fraction()
    return NokBody(tuple(_merge(pieces)))


def _merge(pieces):
    out = []
    for p in pieces:
        if out and out[-1].alpha == p.alpha and out[-1].beta == p.beta:
            out[-1] = Piece(out[-1].lo, p.hi, p.alpha, p.beta)
        else:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# The slice family on E x E


@dataclass(frozen=True)
class KlmFamily:
    surface: SurfaceData
    base: DivisorClass
    wall: DivisorClass
    curve: DivisorClass
    epsilon: Fraction
    dimension: int
    bidegree: tuple[int, int]


def exe_surface() -> SurfaceData:
    from .io import load_surface

    return load_surface(FIXTURES / "exe2.json")


def split_restriction(s, bidegree=(3, 1)) -> tuple[Fraction, Fraction]:
    """Bidegree of ``D|_{Y1} - s*Y2`` on ``Y1 = P^2 x E``.

    ``Y2 = E x E`` is the pullback of the plane cubic from the first factor,
    of class ``(3, 0)``; the second entry is the degree on the cubic ``E``.
    """
    a, b = bidegree
    s = Fraction(s)
    return Fraction(a) - 3 * s, Fraction(3 * b)


def is_split_ample(s, bidegree=(3, 1)) -> bool:
    return all(x > 0 for x in split_restriction(s, bidegree))


def epsilon_sup(bidegree=(3, 1)) -> Fraction:
    """Supremum of the ``s`` for which ``D|_{Y1} - s*Y2`` stays ample."""
    a, b = bidegree
    if a <= 0 or b <= 0:
        raise PreconditionError("D must be ample")
    return Fraction(a, 3)


def build_klm_family(d: int, bidegree=(3, 1)) -> KlmFamily:
    """Slice-family data on ``E x E`` for ``D = O(a, b)`` on ``P^{d-2} x P^2``.

    ``O(1, 0)`` and ``O(0, 1)`` restrict to ``3f1`` and ``3f2`` because the
    plane cubic has degree 3; the earlier flag steps ``P^{d-2-k} x P^2`` are
    linear sections and leave the bidegree unchanged.  ``[Y2]|_{Y2}`` is the
    restriction of ``3*pr1^*O(1)``, i.e. ``9f1``.
    """
    if d < 4:
        raise PreconditionError("dimension must be at least 4")
    s = exe_surface()
    a, b = bidegree
    f1, f2, delta = s.basis("f1"), s.basis("f2"), s.basis("Delta")
    return KlmFamily(
        surface=s,
        base=3 * a * f1 + 3 * b * f2,
        wall=9 * f1,
        curve=f1 + f2 + delta,
        epsilon=epsilon_sup(bidegree) / 2,
        dimension=d,
        bidegree=(a, b),
    )


@dataclass(frozen=True)
class SliceRegion:
    surface: SurfaceData
    base: DivisorClass
    wall: DivisorClass
    curve: DivisorClass
    epsilon: Fraction
    boundary_polynomial: tuple[int, ...]
    samples: tuple[tuple[Fraction, QuadSurd], ...]
    holdout: tuple[tuple[Fraction, QuadSurd], ...]

    def family(self, s) -> DivisorClass:
        return self.base - Fraction(s) * self.wall

    @property
    def degree(self) -> int:
        q = self.boundary_polynomial
        return 2 if any(q[:3]) else 1


def evaluate_boundary(q, s, t) -> QuadSurd:
    t = QuadSurd.coerce(t)
    s = Fraction(s)
    total = QuadSurd(0)
    for coef, (es, et) in zip(q, _EXPONENTS):
        if coef:
            total = total + coef * s ** es * t ** et
    return total


def _monomial_rows(points, exps):
    rows = []
    for s, t in points:
        vals = [Fraction(s) ** es * QuadSurd.coerce(t) ** et for es, et in exps]
        rows.append([v.a for v in vals])
        if any(v.b for v in vals):
            rows.append([v.b for v in vals])
    return rows


def _fit_boundary(points):
    for exps in (_EXPONENTS[3:], _EXPONENTS):
        kernel = nullspace(_monomial_rows(points, exps), len(exps))
        if len(kernel) == 1:
            q = [0] * (6 - len(exps)) + primitive_integer_vector(kernel[0])
            return tuple(q)
        if len(kernel) > 1 and len(exps) == 6:
            raise PreconditionError("boundary fit underdetermined; use more samples")
    raise PreconditionError("boundary not algebraic of degree <= 2")


def exit_times(s, b0, w, c, grid):
    out = []
    for x in grid:
        x = Fraction(x)
        mu = cone_exit_time(s.nef, b0 - x * w, c, s)
        if mu is INFINITE:
            raise PreconditionError(f"exit time infinite at s = {x}")
        out.append((x, mu))
    return out


def slice_region(s: SurfaceData, b0, w, c, epsilon, grid) -> SliceRegion:
    """Fit and verify the boundary curve of the nef region of ``b0 - s*w - t*c``.

    The fit uses the grid samples; midpoints of consecutive grid values are
    held out and must also lie on the fitted curve.
    """
    epsilon = Fraction(epsilon)
    grid = sorted(Fraction(x) for x in grid)
    if len(grid) < 5:
        raise PreconditionError("insufficient samples")
    if len(set(grid)) != len(grid):
        raise PreconditionError("grid values must be distinct")
    if not all(0 <= x < epsilon for x in grid):
        raise PreconditionError("grid must lie in [0, epsilon)")
    if not cone_contains(s.nef, b0, s):
        raise PreconditionError("base class is not nef")
    samples = exit_times(s, b0, w, c, grid)
    held = exit_times(s, b0, w, c, [(x + y) / 2 for x, y in zip(grid, grid[1:])])
    q = _fit_boundary(samples)
    for x, mu in samples + held:
        if evaluate_boundary(q, x, mu) != 0:
            raise PreconditionError("boundary not algebraic of degree <= 2")
    return SliceRegion(s, b0, w, c, epsilon, q, tuple(samples), tuple(held))


class BoundaryKind(enum.Enum):
    PIECEWISE_LINEAR = "PIECEWISE_LINEAR"
    NONDEGENERATE_CONIC = "NONDEGENERATE_CONIC"


@dataclass(frozen=True)
class BoundaryVerdict:
    kind: BoundaryKind
    matrix: tuple[tuple[Fraction, ...], ...]
    determinant: Fraction
    pieces: tuple[str, ...] = ()


def conic_matrix(q) -> tuple[tuple[Fraction, ...], ...]:
    """Symmetric matrix of ``Q`` in the homogeneous coordinates ``(s, t, 1)``."""
    a, b, c, d, e, f = (Fraction(x) for x in q)
    return ((a, b / 2, d / 2), (b / 2, c, e / 2), (d / 2, e / 2, f))


def _linear_pieces(q) -> tuple[str, ...]:
    import sympy

    s, t = sympy.symbols("s t")
    expr = sum(int(k) * s ** es * t ** et for k, (es, et) in zip(q, _EXPONENTS))
    _, factors = sympy.factor_list(expr, s, t)
    if any(sympy.Poly(f, s, t).total_degree() > 1 for f, _ in factors):
        a, b, c = q[:3]
        disc = sympy.Integer(b * b - 4 * a * c)
        _, factors = sympy.factor_list(expr, s, t, extension=sympy.sqrt(disc))
    return tuple(str(f) for f, _ in factors)


def classify_boundary(region: SliceRegion) -> BoundaryVerdict:
    """Decide whether the fitted boundary is a nondegenerate conic."""
    q = region.boundary_polynomial
    if not any(q):
        raise PreconditionError("boundary polynomial is identically zero")
    m = conic_matrix(q)
    det = determinant([list(r) for r in m])
    on_curve = [p for p in region.samples + region.holdout
                if evaluate_boundary(q, *p) == 0]
    if len(on_curve) < 3:
        raise PreconditionError("fewer than three exact boundary samples")
    if region.degree == 1:
        return BoundaryVerdict(BoundaryKind.PIECEWISE_LINEAR, m, det, _linear_pieces(q))
    if det != 0:
        return BoundaryVerdict(BoundaryKind.NONDEGENERATE_CONIC, m, det)
    return BoundaryVerdict(BoundaryKind.PIECEWISE_LINEAR, m, det, _linear_pieces(q))


def assemble_slice_body(region: SliceRegion, flag: FlagOnSurface | None = None):
    """Surface bodies of ``B0 - s*W`` for each fitted sample ``s``."""
    if flag is None:
        flag = FlagOnSurface(region.curve)
    return [(x, nok_surface_body(region.surface, region.family(x), flag))
            for x, _ in region.samples]
