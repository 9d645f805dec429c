"""Small exact polynomial toolkit.

Univariate polynomials are tuples of ``Fraction`` coefficients in ascending
order with no trailing zeros (the zero polynomial is ``()``).  :class:`Poly2`
is a sparse polynomial in ``x`` and ``q``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import comb

Poly = tuple


def trim(p) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p) -> int:
    return len(trim(p)) - 1


def add(p, r) -> Poly:
    return trim(a + b for a, b in zip_longest(p, r, fillvalue=Fraction(0)))


def sub(p, r) -> Poly:
    return trim(a - b for a, b in zip_longest(p, r, fillvalue=Fraction(0)))


def scale(p, c) -> Poly:
    return trim(Fraction(c) * a for a in p)


def mul(p, r) -> Poly:
    if not p or not r:
        return ()
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return trim(out)


def power(p, n: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(n):
        out = mul(out, p)
    return out


def shift(p, k: int) -> Poly:
    """Multiply by ``x**k``."""
    p = trim(p)
    return tuple([Fraction(0)] * k + list(p)) if p else ()


def derivative(p) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i)


def evaluate(p, x):
    acc = 0
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


def divmod_poly(p, r) -> tuple[Poly, Poly]:
    p, r = list(trim(p)), trim(r)
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(r) + 1, 0)
    while len(p) >= len(r) and p:
        k = len(p) - len(r)
        c = p[-1] / r[-1]
        quot[k] = c
        for i, b in enumerate(r):
            p[i + k] -= c * b
        p = list(trim(p))
    return trim(quot), trim(p)


def gcd(p, r) -> Poly:
    """Monic greatest common divisor."""
    p, r = trim(p), trim(r)
    while r:
        p, r = r, divmod_poly(p, r)[1]
    if not p:
        return ()
    return scale(p, 1 / p[-1])


def lcm(p, r) -> Poly:
    g = gcd(p, r)
    return divmod_poly(mul(p, r), g)[0]


def substitute_power(p, m: int) -> Poly:
    """``p(x**m)``."""
    out = [Fraction(0)] * (m * (len(p) - 1) + 1) if p else []
    for i, c in enumerate(p):
        out[i * m] = Fraction(c)
    return trim(out)


def series_quotient(u, v, n: int) -> list[Fraction]:
    """First ``n + 1`` coefficients of ``u/v`` (requires ``v(0) != 0``)."""
    u, v = trim(u), trim(v)
    if not v or v[0] == 0:
        raise ZeroDivisionError("denominator vanishes at 0")
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = u[k] if k < len(u) else Fraction(0)
        for j in range(1, min(k, len(v) - 1) + 1):
            acc -= v[j] * out[k - j]
        out.append(acc / v[0])
    return out


def from_roots_power(root, mult: int) -> Poly:
    """``(1 - x/root)**mult`` for a rational ``root``; convenient for tests."""
    return power((Fraction(1), -1 / Fraction(root)), mult)


def newton_to_monomial(start: int, diffs) -> Poly:
    """Monomial coefficients of ``n -> sum_k diffs[k] * C(n - start, k)``."""
    out: Poly = ()
    for k, dk in enumerate(diffs):
        if not dk:
            continue
        # C(n - start, k) = prod_{j<k} (n - start - j) / k!
        term: Poly = (Fraction(1),)
        for j in range(k):
            term = mul(term, (Fraction(-start - j), Fraction(1)))
        out = add(out, scale(term, Fraction(dk) / _factorial(k)))
    return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def binomial_series(m: int, n: int) -> list[int]:
    """Coefficients of ``1/(1-x)**m`` through ``x**n``."""
    return [comb(k + m - 1, m - 1) for k in range(n + 1)]


class Poly2:
    """Sparse polynomial in ``x`` and ``q`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean

    @classmethod
    def from_x(cls, p) -> "Poly2":
        return cls({(i, 0): c for i, c in enumerate(p)})

    @classmethod
    def from_q(cls, p) -> "Poly2":
        return cls({(0, i): c for i, c in enumerate(p)})

    @classmethod
    def from_q_slices(cls, slices) -> "Poly2":
        """``sum_i q**i * slices[i](x)``."""
        terms = {}
        for i, p in enumerate(slices):
            for e, c in enumerate(p):
                terms[(e, i)] = c
        return cls(terms)

    @classmethod
    def constant(cls, c) -> "Poly2":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly2(out)

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return Poly2({k: c * Fraction(other) for k, c in self.terms.items()})
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (e, f), g in other.terms.items():
                key = (a + e, b + f)
                out[key] = out.get(key, 0) + c * g
        return Poly2(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, var: str = "x") -> "Poly2":
        idx = 0 if var == "x" else 1
        out = {}
        for k, c in self.terms.items():
            if k[idx]:
                nk = (k[0] - 1, k[1]) if idx == 0 else (k[0], k[1] - 1)
                out[nk] = c * k[idx]
        return Poly2(out)

    def degree(self, var: str) -> int:
        idx = 0 if var == "x" else 1
        return max((k[idx] for k in self.terms), default=-1)

    def q_slice(self, i: int) -> Poly:
        top = max((k[0] for k in self.terms if k[1] == i), default=-1)
        return trim(self.terms.get((e, i), 0) for e in range(top + 1))

    def evaluate(self, x, q):
        return sum((c * x ** a * q ** b for (a, b), c in self.terms.items()), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            mono = "*".join(m for m in (f"x^{a}" if a else "", f"q^{b}" if b else "") if m)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)
