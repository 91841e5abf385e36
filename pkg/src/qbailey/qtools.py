"""Pochhammer symbols, Gaussian polynomials and the Jacobi triple product."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import INF, NonUnitError, QSeries, _order_value, as_rational, sum_converging


@dataclass(frozen=True)
class MonomialArg:
    """The signed monomial sign * q^exponent used as a Pochhammer argument."""

    sign: int
    exponent: Fraction

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "exponent", as_rational(self.exponent))

    def times(self, other: "MonomialArg") -> "MonomialArg":
        return MonomialArg(self.sign * other.sign, self.exponent + other.exponent)

    def over(self, other: "MonomialArg") -> "MonomialArg":
        return MonomialArg(self.sign * other.sign, self.exponent - other.exponent)

    def shifted(self, e) -> "MonomialArg":
        return MonomialArg(self.sign, self.exponent + as_rational(e))

    def power(self, n: int, order=INF) -> QSeries:
        """(sign q^e)^n as a series."""
        return QSeries.monomial(self.sign ** (n % 2), self.exponent * n, order)


def mono(e, sign: int = 1) -> MonomialArg:
    return MonomialArg(sign, as_rational(e))


def _factor_exponents(a: MonomialArg, start: int, stop: int, base: int):
    return [a.exponent + base * k for k in range(start, stop)]


def _product_of_factors(sign: int, exps, order) -> QSeries:
    """prod (1 - sign q^f) over the exponents f, truncated at order."""
    exps = sorted(exps)
    neg = [f for f in exps if f < 0]
    shift = sum(neg, Fraction(0))
    inner_order = order if order == INF else order - shift
    result = QSeries.one(inner_order)
    for f in exps:
        if f == 0:
            result = result.scale(1 - sign)
            if result.is_zero():
                return QSeries.zero(order)
            continue
        if inner_order != INF and f > 0 and f >= inner_order:
            continue
        result = result.times_binomial(-sign, f)
    if order != INF:
        result = result.truncate(order)
    return result


@lru_cache(maxsize=65536)
def _poch_cached(sign: int, e: Fraction, n, order, base: int) -> QSeries:
    a = MonomialArg(sign, e)
    if n == INF:
        if order == INF:
            raise ValueError("an infinite product needs a finite order")
        # factors with exponent at or beyond the needed precision are 1
        neg = sum((f for f in (e + base * k for k in range(_first_nonneg(e, base))) if f < 0), Fraction(0))
        limit = order - neg
        kmax = 0
        while e + base * kmax < limit:
            kmax += 1
        return _product_of_factors(sign, _factor_exponents(a, 0, kmax, base), order)
    if n >= 0:
        return _product_of_factors(sign, _factor_exponents(a, 0, n, base), order)
    return poch_reciprocal_exps(sign, _factor_exponents(a, n, 0, base), order)


def _first_nonneg(e: Fraction, base: int) -> int:
    """Smallest k >= 0 with e + base*k >= 0."""
    k = 0
    while e + base * k < 0:
        k += 1
    return k


def poch_reciprocal_exps(sign: int, exps, order) -> QSeries:
    """1/prod (1 - sign q^f) over the exponents f, truncated at order."""
    exps = list(exps)
    if any(f == 0 for f in exps):
        if sign == 1:
            raise ZeroDivisionError("Pochhammer factor (1 - 1) in a denominator")
        raise NonUnitError("Pochhammer factor 2 in a denominator")
    if not exps:
        return QSeries.one(order)
    if order == INF:
        raise ValueError("an infinite expansion needs a finite order")
    # 1/(1 - s q^f) = -s q^{-f} / (1 - s q^{-f}) turns negative exponents positive
    neg = [f for f in exps if f < 0]
    shift = -sum(neg, Fraction(0))
    pref = (-sign) ** len(neg)
    result = QSeries.one(order - shift)
    for f in exps:
        g = f if f > 0 else -f
        if g >= order - shift:
            continue
        result = result.div_binomial(-sign, g)
    return result.shift(shift).scale(pref)


def poch(a: MonomialArg, n, order=INF, base: int = 1) -> QSeries:
    """(a; q^base)_n for integer n (quotient definition when n < 0) or n = INF."""
    order = _order_value(order)
    if n != INF and n < 0 and order == INF:
        exps = _factor_exponents(a, n, 0, base)
        if any(f == 0 for f in exps) and a.sign == 1:
            raise ZeroDivisionError("(a)_n with a vanishing denominator factor")
        raise ValueError("negative-index Pochhammer symbols need a finite order")
    return _poch_cached(a.sign, a.exponent, n, order, base)


def poch_reciprocal(a: MonomialArg, n, order=INF, base: int = 1) -> QSeries:
    """1/(a; q^base)_n; for n < 0 this is the finite product prod_{k=n}^{-1} (1 - a q^{base k})."""
    order = _order_value(order)
    return _poch_recip_cached(a.sign, a.exponent, n, order, base)


@lru_cache(maxsize=65536)
def _poch_recip_cached(sign: int, e: Fraction, n, order, base: int) -> QSeries:
    a = MonomialArg(sign, e)
    if n != INF and n < 0:
        return _product_of_factors(sign, _factor_exponents(a, n, 0, base), order)
    if order == INF:
        if n == 0:
            return QSeries.one()
        raise ValueError("1/(a)_n needs a finite order")
    if n == INF:
        k0 = _first_nonneg(e, base)
        kmax = k0
        while e + base * kmax < order + 1:
            kmax += 1
        exps = _factor_exponents(a, 0, kmax, base)
    else:
        exps = _factor_exponents(a, 0, n, base)
    return poch_reciprocal_exps(sign, exps, order)


def qfac(n: int, order=INF) -> QSeries:
    """(q; q)_n, and (q)_inf for n = INF."""
    return poch(MonomialArg(1, Fraction(1)), n, order)


def qfac_inv(n, order) -> QSeries:
    """1/(q; q)_n; zero for negative n by the quotient convention."""
    return poch_reciprocal(MonomialArg(1, Fraction(1)), n, order)


@lru_cache(maxsize=200000)
def _qbin_cached(n: int, m: int, order) -> QSeries:
    if m < 0 or (n >= 0 and m > n):
        return QSeries.zero(order)
    if m == 0:
        return QSeries.one(order)
    if n >= 0:
        if 2 * m > n:
            return _qbin_cached(n, n - m, order)
        # [n-m+k, k] built up one factor at a time, each an exact polynomial
        deg = m * (n - m)
        cap = deg + 1 if order == INF else min(deg + 1, math.ceil(order))
        if cap <= 0:
            return QSeries.zero(order)
        poly = [1] + [0] * (cap - 1)
        for k in range(1, m + 1):
            # multiply by (1 - q^{n-m+k})
            s = n - m + k
            for i in range(cap - 1, s - 1, -1):
                poly[i] -= poly[i - s]
            # divide by (1 - q^k)
            for i in range(k, cap):
                poly[i] += poly[i - k]
        return QSeries.from_dense(poly, 0, order)
    # negative top entry: (q^{n-m+1})_m / (q)_m via the series routines
    num = poch(MonomialArg(1, Fraction(n - m + 1)), m, INF)
    den = qfac(m, INF)
    quo = num.poly_divide(den)
    if quo is None:
        raise ArithmeticError("Gaussian quotient not exact")
    return quo.truncate(order)


def qbinomial(n: int, m: int, order=INF) -> QSeries:
    """The Gaussian polynomial [n, m]; zero unless m >= 0, and zero when m > n >= 0."""
    return _qbin_cached(n, m, _order_value(order))


def qbinomial_inverted(n: int, m: int) -> QSeries:
    """[n, m] evaluated at 1/q, as an exact Laurent polynomial."""
    return qbinomial(n, m).reciprocal_q()


def triple_product_lhs(x: MonomialArg, order, base: int = 1) -> QSeries:
    """sum_r (-1)^r x^r q^{base*C(r,2)} over all integers r."""
    order = _order_value(order)

    def term(r):
        sign = (-x.sign) ** (r % 2) if r >= 0 else (-x.sign) ** ((-r) % 2)
        return (sign, x.exponent * r + base * Fraction(r * (r - 1), 2))

    return sum_converging(term, order, domain="Z", denom=x.exponent.denominator)


def triple_product_rhs(x: MonomialArg, order, base: int = 1) -> QSeries:
    """(x; p)_inf (p/x; p)_inf (p; p)_inf with p = q^base."""
    order = _order_value(order)
    qb = MonomialArg(1, Fraction(base))
    args = (x, qb.over(x), qb)
    # a factor with negative valuation costs the others that much precision
    lift = -sum(min(Fraction(0), poch(a, INF, order, base).valuation) for a in args
                if not poch(a, INF, order, base).is_zero())
    f1, f2, f3 = (poch(a, INF, order + lift, base) for a in args)
    return (f1 * f2 * f3).truncate(order)
