"""Cohomology tables of split line bundles on products of P^m and elliptic curves.

The table entry ``a[n][i]`` is ``dim H^i(X, O(nD))`` where ``nD`` has
multidegree ``(c_1 n, ..., c_k n)`` on the factors; it is assembled from the
factor-wise values with the Kunneth formula.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class ProjectiveSpace:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("projective space needs dimension >= 1")

    @property
    def dim(self) -> int:
        return self.m

    def cohomology(self, a: int, n: int = 1) -> tuple[int, ...]:
        return cohomology_projective_space(self.m, a)

    def __str__(self):
        return f"P{self.m}"


@dataclass(frozen=True)
class EllipticCurve:
    """An elliptic curve; ``trivial_degree_zero`` says whether a degree-0
    ray restricts to the trivial bundle or to a non-torsion degree-0 bundle."""

    trivial_degree_zero: bool = True

    @property
    def dim(self) -> int:
        return 1

    def cohomology(self, e: int, n: int = 1) -> tuple[int, int]:
        # nD with n == 0 is the structure sheaf whatever the ray.
        return cohomology_elliptic(e, self.trivial_degree_zero or n == 0)

    def __str__(self):
        return "E" if self.trivial_degree_zero else "E'"


@dataclass(frozen=True)
class MultidegreeRay:
    coefficients: tuple[int, ...]

    def at(self, n: int) -> tuple[int, ...]:
        return tuple(c * n for c in self.coefficients)


@dataclass(frozen=True)
class CoefficientTable:
    N: int
    d: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.N + 1:
            raise ValueError("table needs N + 1 rows")
        if any(len(row) != self.d + 1 for row in self.entries):
            raise ValueError("each row needs d + 1 entries")
        if any(x < 0 for row in self.entries for x in row):
            raise ValueError("cohomology dimensions are non-negative")

    def slice(self, i: int) -> list[int]:
        """The coefficients of ``q**i``: ``[a[n][i] for n = 0..N]``."""
        return [row[i] for row in self.entries]

    def euler_characteristic(self, n: int) -> int:
        return sum((-1) ** i * x for i, x in enumerate(self.entries[n]))


def cohomology_projective_space(m: int, a: int) -> tuple[int, ...]:
    """``(h^0, ..., h^m)`` of ``O(a)`` on ``P^m`` (Bott's formula)."""
    h = [0] * (m + 1)
    if a >= 0:
        h[0] = comb(a + m, m)
    if a <= -m - 1:
        h[m] = comb(-a - 1, m)
    return tuple(h)


def cohomology_elliptic(e: int, trivial_flag: bool) -> tuple[int, int]:
    """``(h^0, h^1)`` of a degree-``e`` line bundle on an elliptic curve."""
    if e > 0:
        return (e, 0)
    if e < 0:
        return (0, -e)
    return (1, 1) if trivial_flag else (0, 0)


def kunneth_table(factors, ray: MultidegreeRay, N: int) -> CoefficientTable:
    factors = list(factors)
    if N < 0:
        raise ValueError("N must be non-negative")
    if len(ray.coefficients) != len(factors):
        raise ValueError("ray needs one coefficient per factor")
    d = sum(f.dim for f in factors)
    rows = []
    for n in range(N + 1):
        row = [1] + [0] * d  # product over zero factors so far
        for f, a in zip(factors, ray.at(n)):
            h = f.cohomology(a, n)
            nxt = [0] * (d + 1)
            for i, x in enumerate(row):
                if x:
                    for j, y in enumerate(h):
                        if y and i + j <= d:
                            nxt[i + j] += x * y
            row = nxt
        rows.append(tuple(row))
    return CoefficientTable(N, d, tuple(rows))


_FACTOR = re.compile(r"P(\d+)|E'|E")


def parse_factors(spec: str):
    """Parse ``"P2xP2"``, ``"ExP1"`` or ``"P3xE'"`` (``E'``: non-trivial degree 0)."""
    out = []
    for token in spec.split("x"):
        token = token.strip()
        m = _FACTOR.fullmatch(token)
        if not m:
            raise ValueError(f"unknown factor {token!r}")
        if m.group(1):
            out.append(ProjectiveSpace(int(m.group(1))))
        else:
            out.append(EllipticCurve(token == "E"))
    return out


def parse_ray(spec: str) -> MultidegreeRay:
    return MultidegreeRay(tuple(int(x) for x in spec.replace(" ", "").split(",")))


def format_factors(factors) -> str:
    return "x".join(str(f) for f in factors)
