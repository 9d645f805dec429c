"""Exact linear algebra over Q.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Solving and
determinants use Bareiss' fraction-free elimination on an integer-scaled copy,
so intermediate entries stay integral; nullspaces come from reduced row
echelon form.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

Matrix = list[list[Fraction]]


def as_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def determinant(m) -> Fraction:
    """Determinant by Bareiss elimination."""
    m = as_matrix(m)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    for row in m:
        den = lcm(*(x.denominator for x in row))
        scale /= den
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def solve(a, b) -> list[Fraction]:
    """Unique solution of the square system ``a x = b``; raises if singular."""
    a = as_matrix(a)
    n = len(a)
    aug = [row + [Fraction(v)] for row, v in zip(a, b)]
    m = _integer_rows(aug)
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                raise ZeroDivisionError("singular system")
            m[k], m[swap] = m[swap], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = Fraction(m[i][n]) - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / m[i][i]
    return x


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    r = as_matrix(m)
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        p = next((i for i in range(lead, rows) if r[i][c] != 0), None)
        if p is None:
            continue
        r[lead], r[p] = r[p], r[lead]
        pv = r[lead][c]
        r[lead] = [x / pv for x in r[lead]]
        for i in range(rows):
            if i != lead and r[i][c] != 0:
                f = r[i][c]
                r[i] = [x - f * y for x, y in zip(r[i], r[lead])]
        pivots.append(c)
        lead += 1
        if lead == rows:
            break
    return r, pivots


def nullspace(m, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots = rref(m)
    n = len(r[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(m) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def mat_vec(m, v) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in m]


def is_negative_definite(g) -> bool:
    """Sylvester's criterion applied to ``-g``."""
    g = as_matrix(g)
    n = len(g)
    for k in range(1, n + 1):
        minor = [[-g[i][j] for j in range(k)] for i in range(k)]
        if determinant(minor) <= 0:
            return False
    return True


def primitive_integer_vector(v) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    from math import gcd

    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints
