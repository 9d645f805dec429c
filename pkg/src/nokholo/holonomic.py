"""Guessing closed forms for coefficient tables and certifying D-finiteness.

Guesses come from exact nullspaces and are only trusted after two checks: the
fitted object must reproduce held-out coefficients, and (for certificates) the
annihilating operator must kill the closed form as a polynomial identity.  A
failed guess is reported as ``None`` / ``NO_FIT_FOUND``, never as evidence of
non-holonomicity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import poly
from .cohomology import CoefficientTable
from .linalg import nullspace, primitive_integer_vector
from .poly import Poly2

MIN_TABLE_ORDER = 8


def _table(b) -> list[Fraction]:
    b = [Fraction(x) for x in b]
    if len(b) - 1 < MIN_TABLE_ORDER:
        raise ValueError(f"need at least {MIN_TABLE_ORDER + 1} coefficients, got {len(b)}")
    return b


# ---------------------------------------------------------------------------
# eventual polynomials


@dataclass(frozen=True)
class EventualPolynomial:
    coefficients: tuple[Fraction, ...]  # in n, ascending
    transient: int

    def __call__(self, n):
        return poly.evaluate(self.coefficients, Fraction(n))


def fit_eventual_polynomial(b, max_degree: int) -> EventualPolynomial | None:
    """Smallest ``r`` and polynomial ``P`` (degree ``<= max_degree``) with ``P(n) = b[n]`` for ``n >= r``."""
    b = _table(b)
    N = len(b) - 1
    if max_degree > N / 2:
        raise ValueError("max_degree must not exceed N/2")
    for r in range(N // 2 + 1):
        tail = b[r:]
        if len(tail) < max_degree + 2:
            break
        diffs = [tail[0]]
        row = tail
        for _ in range(max_degree + 1):
            row = [y - x for x, y in zip(row, row[1:])]
            diffs.append(row[0])
        if any(row):
            continue
        return EventualPolynomial(poly.newton_to_monomial(r, diffs[:max_degree + 1]), r)
    return None


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RationalFit:
    """``f = numerator/denominator + sum_n transient_prefix[n] x**n``."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    transient_prefix: tuple[Fraction, ...] = ()

    def series(self, n: int) -> list[Fraction]:
        out = poly.series_quotient(self.numerator, self.denominator, n)
        for k, c in enumerate(self.transient_prefix[: n + 1]):
            out[k] += c
        return out

    def closed_form(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """Reduced ``(U, V)`` with ``U/V = f`` and ``V(0) = 1``."""
        u = poly.add(self.numerator, poly.mul(self.transient_prefix, self.denominator))
        return _reduce(u, self.denominator)


def _reduce(u, v):
    u, v = poly.trim(u), poly.trim(v)
    g = poly.gcd(u, v) if u else v
    u = poly.divmod_poly(u, g)[0]
    v = poly.divmod_poly(v, g)[0]
    if not v or v[0] == 0:
        return None
    c = v[0]
    return poly.scale(u, 1 / c), poly.scale(v, 1 / c)


def _pade(b, deg_u: int, deg_v: int, order: int):
    """``(u, v)`` with ``v*f - u = O(x**(order+1))``, reduced, or ``None``."""
    nu = deg_u + 1
    rows = []
    for n in range(order + 1):
        row = [Fraction(int(n == k)) * -1 for k in range(nu)]
        row += [b[n - j] if n - j >= 0 else Fraction(0) for j in range(deg_v + 1)]
        rows.append(row)
    for vec in nullspace(rows, nu + deg_v + 1):
        reduced = _reduce(vec[:nu], vec[nu:])
        if reduced is not None:
            return reduced
    return None


def guess_rational(b, deg_u: int, deg_v: int, holdout: int, max_transient: int = 0):
    """Exact rational fit of a table, validated on its last ``holdout`` entries.

    If no fit exists for the whole table, up to ``max_transient`` leading
    coefficients may be split off as a finite correction.
    """
    b = _table(b)
    N = len(b) - 1
    if deg_u + deg_v + 2 + holdout > N + 1:
        raise ValueError("degree bounds and holdout exceed the table length")
    for r in range(max_transient + 1):
        tail = b[r:]
        order = len(tail) - 1 - holdout
        if order < deg_u + deg_v + 1:
            break
        found = _pade(tail, deg_u, deg_v, order)
        if found is None:
            continue
        u, v = found
        if poly.series_quotient(u, v, len(tail) - 1) != tail:
            continue
        return RationalFit(poly.shift(u, r), v, tuple(b[:r]))
    return None


def search_rational(b, max_deg_u: int, max_deg_v: int, holdout: int, max_transient: int = 0):
    """First fit in order of increasing ``(deg_v, deg_u)`` within the bounds."""
    b = [Fraction(x) for x in b]
    N = len(b) - 1
    if N < MIN_TABLE_ORDER:
        return None
    for transient in sorted({0, max_transient}):
        for dv in range(max_deg_v + 1):
            for du in range(max_deg_u + 1):
                if du + dv + 2 + holdout > N + 1:
                    continue
                fit = guess_rational(b, du, dv, holdout, transient)
                if fit is not None:
                    return fit
    return None


# ---------------------------------------------------------------------------
# differential operators


@dataclass(frozen=True)
class OdeOperator:
    """``sum_j coefficients[j] * d^(order-j)/dvar^(order-j)``."""

    variable: str
    coefficients: tuple[Poly2, ...]

    def __post_init__(self):
        if all(c.is_zero() for c in self.coefficients):
            raise ValueError("operator coefficients must not all vanish")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def apply_to_rational(self, u: Poly2, v: Poly2) -> Poly2:
        """Numerator of ``L(u/v)`` over ``v**(order+1)``."""
        var = self.variable
        dv = v.diff(var)
        nums = [u]
        for m in range(self.order):
            nums.append(nums[m].diff(var) * v - (m + 1) * (nums[m] * dv))
        total = Poly2()
        vpow = Poly2.constant(1)
        for j, p in enumerate(self.coefficients):
            total = total + p * nums[self.order - j] * vpow
            vpow = vpow * v
        return total

    def apply_to_series(self, b, n_max: int) -> list[Fraction]:
        """Coefficients ``0..n_max`` of ``L f`` for a univariate series ``f``."""
        k = self.order
        out = []
        for n in range(n_max + 1):
            acc = Fraction(0)
            for j, p in enumerate(self.coefficients):
                m = k - j
                for (e, _), c in p.terms.items():
                    i = n - e
                    if i >= 0:
                        acc += c * _falling(i + m, m) * b[i + m]
            out.append(acc)
        return out


def _falling(top: int, m: int) -> int:
    out = 1
    for j in range(m):
        out *= top - j
    return out


def guess_ode(b, max_order: int, max_coeff_degree: int, holdout: int) -> OdeOperator | None:
    """Search for a linear ODE with polynomial coefficients annihilating ``f``.

    Orders and coefficient degrees are tried in increasing order; combinations
    whose linear system would be underdetermined are skipped.
    """
    b = _table(b)
    N = len(b) - 1
    for k in range(1, max_order + 1):
        for D in range(max_coeff_degree + 1):
            unknowns = (k + 1) * (D + 1)
            if unknowns + holdout > N - k:
                continue
            fit_to = N - k - holdout
            rows = []
            for n in range(fit_to + 1):
                row = []
                for j in range(k + 1):
                    m = k - j
                    for e in range(D + 1):
                        i = n - e
                        row.append(_falling(i + m, m) * b[i + m] if i >= 0 else Fraction(0))
                rows.append(row)
            for vec in nullspace(rows, unknowns):
                ints = primitive_integer_vector(vec)
                coeffs = tuple(
                    Poly2.from_x(ints[j * (D + 1):(j + 1) * (D + 1)]) for j in range(k + 1))
                op = OdeOperator("x", coeffs)
                if not any(op.apply_to_series(b, N - k)):
                    return op
    return None


# ---------------------------------------------------------------------------
# certificates


class Verdict(enum.Enum):
    CERTIFIED_HOLONOMIC = "CERTIFIED_HOLONOMIC"
    NO_FIT_FOUND = "NO_FIT_FOUND"


@dataclass(frozen=True)
class HolonomicCertificate:
    verdict: Verdict
    d: int
    N: int
    modulus: int
    fits: tuple = ()
    numerator: Poly2 | None = None
    denominator: tuple[Fraction, ...] | None = None
    x_operator: OdeOperator | None = None
    q_operator: OdeOperator | None = None
    failing_slice: int | None = None
    validation: dict = field(default_factory=dict)


def _fit_slice(b, bounds, holdout, modulus, max_transient):
    if modulus == 1:
        return search_rational(b, *bounds, holdout, max_transient)
    m = modulus
    per_class = max(1, holdout // m)
    forms = []
    for r in range(m):
        fit = search_rational(b[r::m], *bounds, per_class, max_transient // m)
        if fit is None:
            return None
        forms.append(fit.closed_form())
    # f(x) = sum_r x^r g_r(x^m)
    den = (Fraction(1),)
    for _, v in forms:
        den = poly.lcm(den, poly.substitute_power(v, m))
    num = ()
    for r, (u, v) in enumerate(forms):
        vm = poly.substitute_power(v, m)
        cofactor = poly.divmod_poly(den, vm)[0]
        num = poly.add(num, poly.shift(poly.mul(poly.substitute_power(u, m), cofactor), r))
    reduced = _reduce(num, den)
    if reduced is None:
        return None
    fit = RationalFit(*reduced)
    return fit if fit.series(len(b) - 1) == [Fraction(x) for x in b] else None


def certify_complexity(table: CoefficientTable, deg_bounds=None, holdout: int = 10,
                       modulus: int = 1, max_transient: int | None = None) -> HolonomicCertificate:
    """Fit every ``q``-slice by a rational function and certify the sum.

    ``deg_bounds`` are the maximal numerator and denominator degrees
    (default ``(d + 1, d + 1)``).  With ``modulus = m`` each residue class
    of exponents mod ``m`` is fitted separately in ``y = x**m``.
    """
    d, N = table.d, table.N
    if modulus < 1:
        raise ValueError("modulus must be positive")
    bounds = tuple(deg_bounds) if deg_bounds is not None else (d + 1, d + 1)
    if max_transient is None:
        max_transient = N // 4
    fits = []
    for i in range(d + 1):
        fit = _fit_slice(table.slice(i), bounds, holdout, modulus, max_transient)
        if fit is None:
            return HolonomicCertificate(Verdict.NO_FIT_FOUND, d, N, modulus,
                                        tuple(fits), failing_slice=i)
        fits.append(fit)

    forms = [f.closed_form() for f in fits]
    den = (Fraction(1),)
    for _, v in forms:
        den = poly.lcm(den, v)
    den = poly.scale(den, 1 / den[0])
    slices = [poly.mul(u, poly.divmod_poly(den, v)[0]) for u, v in forms]
    U, V = Poly2.from_q_slices(slices), Poly2.from_x(den)

    if U.is_zero():
        x_op = OdeOperator("x", (Poly2(), Poly2.constant(1)))
    else:
        x_op = OdeOperator("x", (U * V, -(U.diff("x") * V - U * V.diff("x"))))
    q_op = OdeOperator("q", (Poly2.constant(1),) + (Poly2(),) * (d + 1))

    x_residual = x_op.apply_to_rational(U, V)
    q_residual = q_op.apply_to_rational(U, V)
    if not (x_residual.is_zero() and q_residual.is_zero()):
        raise AssertionError("annihilator identity failed")

    per_class = max(1, holdout // modulus)
    residuals = {}
    for i, f in enumerate(fits):
        b = table.slice(i)
        series = poly.series_quotient(slices[i], den, N)
        if series != [Fraction(x) for x in b]:
            raise AssertionError(f"closed form does not reproduce slice {i}")
        tail = range(N + 1 - per_class * modulus, N + 1)
        residuals[i] = [b[n] - series[n] for n in tail]
    validation = {
        "holdout_residuals": residuals,
        "x_operator_identity": "0",
        "q_operator_identity": "0",
    }
    return HolonomicCertificate(Verdict.CERTIFIED_HOLONOMIC, d, N, modulus, tuple(fits),
                                U, den, x_op, q_op, None, validation)
