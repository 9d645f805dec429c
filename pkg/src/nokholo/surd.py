"""Exact arithmetic in real quadratic fields.

A :class:`QuadSurd` is a number ``a + b*sqrt(d)`` with rational ``a, b`` and a
square-free integer ``d > 1``.  Rationals are the special case ``b == 0`` and are
stored with ``d == 1``.  Everything is exact; floats are only produced on
request for reporting.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["QuadSurd", "sqrt_rational", "quadratic_roots", "squarefree_decompose"]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` square-free (``n > 0``)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    k, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return k, d * n


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@total_ordering
class QuadSurd:
    """The real number ``a + b*sqrt(d)``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        a, b = _frac(a), _frac(b)
        d = int(d)
        if b != 0:
            if d < 0:
                raise ValueError("only real quadratic fields are supported")
            if d == 0:
                b = Fraction(0)
            else:
                k, d = squarefree_decompose(d)
                b *= k
        if b == 0 or d == 1:
            a, b, d = a + (b if d == 1 else 0), Fraction(0), 1
        self.a, self.b, self.d = a, b, d

    # -- construction -----------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "QuadSurd":
        return x if isinstance(x, QuadSurd) else cls(_frac(x))

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def minimal_polynomial(self) -> tuple[Fraction, ...]:
        """Monic minimal polynomial over Q, coefficients in ascending order."""
        if self.b == 0:
            return (-self.a, Fraction(1))
        return (self.a * self.a - self.b * self.b * self.d, -2 * self.a, Fraction(1))

    def rational_parts(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    # -- arithmetic -------------------------------------------------------
    def _field(self, other: "QuadSurd") -> int:
        if self.b and other.b and self.d != other.d:
            raise ValueError(
                f"cannot combine sqrt({self.d}) and sqrt({other.d}) in one quadratic field")
        return self.d if self.b else other.d

    def __add__(self, other):
        try:
            o = QuadSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadSurd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = QuadSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadSurd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def _inverse(self) -> "QuadSurd":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        return QuadSurd(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        try:
            o = QuadSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        return QuadSurd.coerce(other) * self._inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self._inverse()) ** (-n)
        out = QuadSurd(1)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison -------------------------------------------------------
    def sign(self) -> int:
        a, b, d = self.a, self.b, self.d
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa if a * a > b * b * d else sb

    def _cmp(self, other) -> int:
        o = QuadSurd.coerce(other)
        if not (self.b and o.b and self.d != o.d):
            return (self - o).sign()
        # u + v*sqrt(d1) against w*sqrt(d2): compare signs, then squares.
        u = QuadSurd(self.a - o.a, self.b, self.d)
        w = o.b
        su, sw = u.sign(), (w > 0) - (w < 0)
        if su != sw:
            return (su > sw) - (su < sw)
        diff = (u * u - w * w * o.d).sign()
        return diff if su > 0 else -diff

    def __eq__(self, other):
        try:
            o = QuadSurd.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- approximation ----------------------------------------------------
    def isolating_interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational ``(lo, hi)`` with ``lo <= self <= hi`` and width ``<= |b| 2**-bits``."""
        if self.b == 0:
            return self.a, self.a
        scale = 1 << bits
        r = math.isqrt(self.d * scale * scale)
        lo_root, hi_root = Fraction(r, scale), Fraction(r + 1, scale)
        ends = sorted((self.a + self.b * lo_root, self.a + self.b * hi_root))
        return ends[0], ends[1]

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        lo, hi = self.isolating_interval(80)
        return float((lo + hi) / 2)

    def to_decimal_string(self, digits: int = 12) -> str:
        return f"{float(self):.{digits}g}"

    def __repr__(self):
        return f"QuadSurd({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        b = self.b
        if b == 1:
            irr = root
        elif b == -1:
            irr = "-" + root
        else:
            irr = f"{b}*{root}"
        if self.a == 0:
            return irr
        if irr.startswith("-"):
            return f"{self.a}-{irr[1:]}"
        return f"{self.a}+{irr}"


def sqrt_rational(r) -> QuadSurd:
    """Exact square root of a non-negative rational."""
    r = _frac(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    if r == 0:
        return QuadSurd(0)
    p, q = r.numerator, r.denominator
    k, d = squarefree_decompose(p * q)
    return QuadSurd(0, Fraction(k, q), d)


def quadratic_roots(a, b, c) -> list[QuadSurd]:
    """Real roots of ``a*t**2 + b*t + c`` in increasing order (``a`` may be zero)."""
    a, b, c = _frac(a), _frac(b), _frac(c)
    if a == 0:
        if b == 0:
            return []
        return [QuadSurd(-c / b)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    root = sqrt_rational(disc)
    r1 = (QuadSurd(-b) - root) / (2 * a)
    r2 = (QuadSurd(-b) + root) / (2 * a)
    if disc == 0:
        return [r1]
    return sorted([r1, r2])
