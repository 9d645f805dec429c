"""Neron-Severi lattices of surfaces, intersection pairings and cone membership.

Cones are input data.  A polyhedral cone is cut out by finitely many classes
``L`` (membership: ``C.L >= 0`` for each), a quadratic cone by the light-cone
conditions ``C.C >= 0`` and ``C.h >= 0`` for an ample reference ``h``.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rank
from .surd import QuadSurd, quadratic_roots

MAX_RANK = 16


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class ForeignClassError(PreconditionError):
    def __init__(self, msg="foreign class"):
        super().__init__(msg)


class _Infinite:
    """Exit time of a ray that never leaves its cone."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[Fraction, ...]
    lattice_id: str

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(other).__name__}")
        if other.lattice_id != self.lattice_id:
            raise ForeignClassError()

    def __add__(self, other):
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.lattice_id)

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.lattice_id)

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coords), self.lattice_id)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return DivisorClass(tuple(s * a for a in self.coords), self.lattice_id)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class IntersectionForm:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("intersection matrix must be square")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise ValueError("intersection matrix must be symmetric")
        if n > MAX_RANK:
            raise ValueError(f"lattice rank {n} exceeds the guard {MAX_RANK}")
        if rank([list(r) for r in m]) != n:
            raise ValueError("intersection pairing is degenerate")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def pair(self, u, v) -> Fraction:
        m = self.matrix
        return sum((u[i] * m[i][j] * v[j] for i in range(len(u)) if u[i]
                    for j in range(len(v)) if v[j]), Fraction(0))


class ConeKind(enum.Enum):
    POLYHEDRAL = "polyhedral"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class ConeSpec:
    kind: ConeKind
    inequalities: tuple[DivisorClass, ...] = ()
    ample_reference: DivisorClass | None = None

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        if self.kind is ConeKind.POLYHEDRAL and not self.inequalities:
            raise ValueError("polyhedral cone needs at least one inequality")
        if self.kind is ConeKind.QUADRATIC and self.ample_reference is None:
            raise ValueError("quadratic cone needs an ample reference class")

    @classmethod
    def polyhedral(cls, inequalities):
        return cls(ConeKind.POLYHEDRAL, tuple(inequalities))

    @classmethod
    def quadratic(cls, h):
        return cls(ConeKind.QUADRATIC, (), h)

    def transported(self, lattice_id: str) -> "ConeSpec":
        move = lambda c: DivisorClass(c.coords, lattice_id)  # noqa: E731
        if self.kind is ConeKind.POLYHEDRAL:
            return ConeSpec(self.kind, tuple(move(c) for c in self.inequalities))
        return ConeSpec(self.kind, (), move(self.ample_reference))


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z_0-9']*)\s*")


@dataclass(frozen=True)
class SurfaceData:
    """Neron-Severi data of a surface: pairing, nef and pseff cones, negative curves.

    ``point_multiplicities[j]`` is the local intersection multiplicity, at the
    flag point, of negative curve ``j`` with the flag curve.
    """

    lattice_id: str
    basis_names: tuple[str, ...]
    form: IntersectionForm
    nef: ConeSpec
    pseff: ConeSpec
    negative_curves: tuple[DivisorClass, ...] = ()
    point_multiplicities: dict = field(default_factory=dict)
    pullback_degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        object.__setattr__(self, "negative_curves", tuple(self.negative_curves))
        object.__setattr__(self, "point_multiplicities",
                           {int(k): int(v) for k, v in self.point_multiplicities.items()})
        if len(self.basis_names) != self.form.rank:
            raise ValueError("basis size does not match the intersection matrix")
        classes = [*self.negative_curves, *self.nef.inequalities, *self.pseff.inequalities]
        for ref in (self.nef.ample_reference, self.pseff.ample_reference):
            if ref is not None:
                classes.append(ref)
        for c in classes:
            self.own(c)
        for cone in (self.nef, self.pseff):
            if cone.kind is ConeKind.QUADRATIC:
                h = cone.ample_reference
                if intersect(h, h, self) <= 0:
                    raise ValueError("ample reference must have positive square")
        for j, c in enumerate(self.negative_curves):
            if intersect(c, c, self) >= 0:
                raise ValueError(f"negative curve {j} has non-negative self-intersection")
            if not cone_contains(self.pseff, c, self):
                raise ValueError(f"negative curve {j} is not pseudoeffective")
        for j, mult in self.point_multiplicities.items():
            if not 0 <= j < len(self.negative_curves) or mult < 0:
                raise ValueError(f"bad point multiplicity entry {j}: {mult}")
        self._spot_check_nef_in_pseff()

    def _spot_check_nef_in_pseff(self):
        n = self.form.rank
        span = range(-2, 3) if n <= 4 else range(-1, 2)
        for coords in itertools.islice(itertools.product(span, repeat=n), 729):
            c = DivisorClass(coords, self.lattice_id)
            if cone_contains(self.nef, c, self) and not cone_contains(self.pseff, c, self):
                raise ValueError(f"nef class {coords} lies outside the pseff cone")

    # -- helpers ----------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.form.rank

    def own(self, c: DivisorClass) -> DivisorClass:
        if not isinstance(c, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(c).__name__}")
        if c.lattice_id != self.lattice_id or len(c.coords) != self.rank:
            raise ForeignClassError()
        return c

    def divisor(self, coords) -> DivisorClass:
        coords = tuple(Fraction(x) for x in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return DivisorClass(coords, self.lattice_id)

    def zero(self) -> DivisorClass:
        return self.divisor([0] * self.rank)

    def basis(self, name: str) -> DivisorClass:
        i = self.basis_names.index(name)
        return self.divisor([int(j == i) for j in range(self.rank)])

    def parse(self, text: str) -> DivisorClass:
        """Parse a class such as ``"9f1+3f2"`` or ``"2H - 1/2*E"``."""
        text = text.strip()
        if not text:
            raise ValueError("empty divisor class")
        if text == "0":
            return self.zero()
        coords = [Fraction(0)] * self.rank
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse divisor class {text!r}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"missing sign before term in {text!r}")
            name = m.group(3)
            if name not in self.basis_names:
                raise ValueError(f"unknown basis element {name!r}")
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                coef = -coef
            coords[self.basis_names.index(name)] += coef
            pos = m.end()
        return self.divisor(coords)

    def format(self, c: DivisorClass) -> str:
        self.own(c)
        out = ""
        for name, x in zip(self.basis_names, c.coords):
            if x == 0:
                continue
            sign = "-" if x < 0 else "+"
            mag = abs(x)
            coef = "" if mag == 1 else (f"{mag}" if mag.denominator == 1 else f"{mag}*")
            out += f"{sign}{coef}{name}"
        if not out:
            return "0"
        return out[1:] if out[0] == "+" else out

    def curve_name(self, j: int) -> str:
        return self.format(self.negative_curves[j])


def intersect(a: DivisorClass, b: DivisorClass, s: SurfaceData) -> Fraction:
    s.own(a)
    s.own(b)
    return s.form.pair(a.coords, b.coords)


def cone_contains(cone: ConeSpec, c: DivisorClass, s: SurfaceData) -> bool:
    s.own(c)
    if cone.kind is ConeKind.POLYHEDRAL:
        return all(intersect(c, ell, s) >= 0 for ell in cone.inequalities)
    return intersect(c, c, s) >= 0 and intersect(c, cone.ample_reference, s) >= 0


def _contains_at(cone, b, c, s, t) -> bool:
    """Membership of ``b - t*c`` for an exact (possibly irrational) ``t``."""
    t = QuadSurd.coerce(t)
    bc, cc = intersect(b, c, s), intersect(c, c, s)
    if cone.kind is ConeKind.POLYHEDRAL:
        return all(intersect(b, ell, s) - t * intersect(c, ell, s) >= 0
                   for ell in cone.inequalities)
    h = cone.ample_reference
    q = intersect(b, b, s) - 2 * t * bc + t * t * cc
    lin = intersect(b, h, s) - t * intersect(c, h, s)
    return q >= 0 and lin >= 0


def _rational_between(lo: QuadSurd, hi: QuadSurd) -> Fraction:
    """A rational strictly between ``lo < hi``."""
    if lo.is_rational and hi.is_rational:
        return (lo.a + hi.a) / 2
    bits = 16
    while True:
        _, lo_hi = lo.isolating_interval(bits)
        hi_lo, _ = hi.isolating_interval(bits)
        if lo_hi < hi_lo:
            return (lo_hi + hi_lo) / 2
        bits *= 2


def cone_exit_time(cone: ConeSpec, b: DivisorClass, c: DivisorClass, s: SurfaceData):
    """``sup{t >= 0 : b - t*c in cone}`` as an exact :class:`QuadSurd`, or ``INFINITE``."""
    s.own(b)
    s.own(c)
    if c.is_zero():
        raise PreconditionError("direction class is zero")
    if not cone_contains(cone, b, s):
        raise PreconditionError("base outside cone")
    if cone.kind is ConeKind.POLYHEDRAL:
        best = None
        for ell in cone.inequalities:
            cl = intersect(c, ell, s)
            if cl > 0:
                r = intersect(b, ell, s) / cl
                best = r if best is None or r < best else best
        return INFINITE if best is None else QuadSurd(best)
    # Light cone: the feasible t form an interval [0, mu]; walk the critical points.
    h = cone.ample_reference
    bb, bc, cc = intersect(b, b, s), intersect(b, c, s), intersect(c, c, s)
    crit = [r for r in quadratic_roots(cc, -2 * bc, bb) if r >= 0]
    ch = intersect(c, h, s)
    if ch != 0:
        th = QuadSurd(intersect(b, h, s) / ch)
        if th >= 0:
            crit.append(th)
    crit = sorted(set(crit))
    for k, r in enumerate(crit):
        nxt = crit[k + 1] if k + 1 < len(crit) else r + 1
        probe = _rational_between(r, nxt)
        if not _contains_at(cone, b, c, s, probe):
            return r
    return INFINITE


def pullback_embed(s: SurfaceData, m: int) -> SurfaceData:
    """Model pullback along a generically finite dominant map of degree ``m``.

    Pairings scale by ``m`` (projection formula); cone data and negative curves
    are transported coordinate-wise.
    """
    if m < 1:
        raise ValueError("degree must be a positive integer")
    lid = f"{s.lattice_id}^*{m}"
    move = lambda c: DivisorClass(c.coords, lid)  # noqa: E731
    form = IntersectionForm(tuple(tuple(m * x for x in row) for row in s.form.matrix))
    return SurfaceData(
        lattice_id=lid,
        basis_names=s.basis_names,
        form=form,
        nef=s.nef.transported(lid),
        pseff=s.pseff.transported(lid),
        negative_curves=tuple(move(c) for c in s.negative_curves),
        point_multiplicities=dict(s.point_multiplicities),
        pullback_degree=s.pullback_degree * m,
    )


def pull_back(alpha: DivisorClass, target: SurfaceData) -> DivisorClass:
    """The class ``pi^* alpha`` in a surface produced by :func:`pullback_embed`."""
    return target.divisor(alpha.coords)
