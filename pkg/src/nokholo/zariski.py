"""Zariski decomposition ``B = P + N`` of pseudoeffective classes on surfaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    DivisorClass,
    PreconditionError,
    SurfaceData,
    cone_contains,
    intersect,
)
from .linalg import is_negative_definite, solve


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive_part: DivisorClass
    negative_part: tuple[tuple[int, Fraction], ...]

    def negative_class(self, s: SurfaceData) -> DivisorClass:
        n = s.zero()
        for j, a in self.negative_part:
            n = n + a * s.negative_curves[j]
        return n

    def coefficient(self, j: int) -> Fraction:
        return dict(self.negative_part).get(j, Fraction(0))


def is_pseudoeffective(s: SurfaceData, b: DivisorClass) -> bool:
    return cone_contains(s.pseff, b, s)


def _gram(s: SurfaceData, support: list[int]):
    curves = s.negative_curves
    return [[intersect(curves[i], curves[j], s) for j in support] for i in support]


def _negative_coefficients(s, support, base, direction):
    """Coefficients ``a0 + h*a1`` of ``N`` on ``support`` for ``base - h*direction``.

    Solves ``(B - N).C_i = 0`` for ``i`` in the support, once for the constant
    part and once for the derivative in ``h``.
    """
    if not support:
        return [], []
    gram = _gram(s, support)
    if not is_negative_definite(gram):
        raise PreconditionError("inconsistent negative-curve data")
    curves = s.negative_curves
    a0 = solve(gram, [intersect(base, curves[i], s) for i in support])
    a1 = solve(gram, [-intersect(direction, curves[i], s) for i in support])
    return a0, a1


def chamber_support(s: SurfaceData, base: DivisorClass, direction: DivisorClass | None = None):
    """Support of the negative part of ``base - h*direction`` for all small ``h > 0``.

    Runs the classical support-growing algorithm with values in ``Q + Q*h``
    compared lexicographically.  With ``direction=None`` this is the support of
    ``base`` itself.  Returns ``(support, a0, a1)`` where the coefficient of the
    i-th support curve is ``a0[i] + h*a1[i]``.
    """
    if direction is None:
        direction = s.zero()
    support: list[int] = []
    curves = s.negative_curves
    while True:
        a0, a1 = _negative_coefficients(s, support, base, direction)
        p0, p1 = base, -direction
        for i, j in enumerate(support):
            p0 = p0 - a0[i] * curves[j]
            p1 = p1 - a1[i] * curves[j]
        added = False
        for j, cj in enumerate(curves):
            if j in support:
                continue
            v0, v1 = intersect(p0, cj, s), intersect(p1, cj, s)
            if v0 < 0 or (v0 == 0 and v1 < 0):
                support.append(j)
                added = True
        if not added:
            return support, a0, a1


def zariski_decompose(s: SurfaceData, b: DivisorClass) -> ZariskiDecomposition:
    """Zariski decomposition of a pseudoeffective class ``b``."""
    s.own(b)
    if not is_pseudoeffective(s, b):
        raise PreconditionError("not pseudoeffective")
    support, a0, _ = chamber_support(s, b)
    if any(a < 0 for a in a0):
        raise PreconditionError("inconsistent negative-curve data")
    n = s.zero()
    for a, j in zip(a0, support):
        n = n + a * s.negative_curves[j]
    p = b - n
    if not cone_contains(s.nef, p, s):
        raise PreconditionError("inconsistent negative-curve data")
    parts = tuple(sorted((j, a) for j, a in zip(support, a0) if a != 0))
    return ZariskiDecomposition(p, parts)
