"""Normalized A1(1) string functions at fractional level and their closed forms.

Everything here computes the normalized series (integer or rational
exponents, no eta-function prefactor).  The offset that converts to the
unnormalized string function is available as a plain rational through
`unnormalized_offset`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .configsum import PreconditionError, X
from .linalg import cartan_inverse_a
from .qtools import mono, poch, poch_reciprocal, qbinomial, qfac_inv
from .series import INF, QSeries, _order_value, sum_converging


def _check(p: int, pp: int, m: int, l: int) -> None:
    if not 1 <= p < pp:
        raise PreconditionError(f"need 1 <= p < p', got ({p}, {pp})")
    if not 0 <= l <= pp - 2:
        raise PreconditionError(f"l={l} outside 0..{pp - 2}")
    if (m - l) % 2:
        raise PreconditionError("l and m must have equal parity")


def _finite(order):
    order = _order_value(order)
    if order == INF:
        raise PreconditionError("string functions need a finite order")
    return order


def inverse_qinf_power(k: int, order) -> QSeries:
    """1/(q)_inf^k to the given order."""
    base = qfac_inv(INF, order)
    out = QSeries.one(order)
    for _ in range(k):
        out = (out * base).truncate(order)
    return out


def _divide_by_qinf_cubed(numerator: QSeries, order) -> QSeries:
    v = numerator.valuation
    if v == INF:
        return QSeries.zero(order)
    need = order - min(v, 0)
    return (numerator * inverse_qinf_power(3, need)).truncate(order)


@lru_cache(maxsize=4096)
def _string_fn(p: int, pp: int, m: int, l: int, order) -> QSeries:
    def plus(idx):
        i, j = idx
        return ((-1) ** (i % 2), Fraction(i * (i + m), 2) + pp * j * (p * j + i)
                + Fraction((l + 1) * (2 * p * j + i), 2))

    def minus(idx):
        i, j = idx
        return ((-1) ** (i % 2), Fraction(i * (i + m), 2) + pp * j * (p * j + i)
                - Fraction((l + 1) * (2 * p * j + i), 2))

    def negated(f):
        def g(idx):
            c, e = f(idx)
            return (-c, e)
        return g

    # numerator may start below zero; sum to a generous order first
    num_order = order
    while True:
        parts = [
            sum_converging(plus, num_order, domain=("N", "N")),
            sum_converging(negated(plus), num_order, domain=("M", "M")),
            sum_converging(negated(minus), num_order, domain=("N", "P")),
            sum_converging(minus, num_order, domain=("M", "NP")),
        ]
        num = parts[0] + parts[1] + parts[2] + parts[3]
        v = num.valuation
        if v == INF or num_order - min(v, 0) <= num.order:
            break
        num_order = order - v
    return _divide_by_qinf_cubed(num, order)


def string_fn(p: int, pp: int, m: int, l: int, order) -> QSeries:
    """The normalized string function C^{(p,p')}_{m,l} via the quadrant sums."""
    _check(p, pp, m, l)
    return _string_fn(p, pp, m, l, _finite(order))


@lru_cache(maxsize=1024)
def _sfdef2(p: int, pp: int, m: int, l: int, order) -> QSeries:
    def outer(idx):
        (j,) = idx if isinstance(idx, tuple) else (idx,)
        base = j * p * (pp * j + l + 1)
        lin = 2 * pp * j + l + 1

        def inner(i):
            sign = (-1) ** (i % 2)
            e0 = Fraction(i * (i + m), 2) + base
            return [(sign, e0 + Fraction(i * lin, 2)), (-sign, e0 - Fraction(i * lin, 2))]

        return _sum_pairs(inner, order)

    num = sum_converging(lambda j: outer(j), order, domain="Z")
    return _divide_by_qinf_cubed(num, order)


def _sum_pairs(inner, order) -> QSeries:
    """Sum over i >= 1 of a pair of monomials per index, cancelling exactly."""
    acc: dict[Fraction, int] = {}
    quiet = 0
    i = 1
    while quiet < 3:
        active = False
        for c, e in inner(i):
            if e < order:
                acc[e] = acc.get(e, 0) + c
                active = True
        quiet = 0 if active else quiet + 1
        i += 1
        if i > 100000:
            raise RuntimeError("inner sum did not settle")
    return QSeries({e: c for e, c in acc.items() if c}, order, denom=2)


def sfdef2_string_fn(p: int, pp: int, m: int, l: int, order) -> QSeries:
    """The defining double sum, summed over j outside and i inside."""
    _check(p, pp, m, l)
    return _sfdef2(p, pp, m, l, _finite(order))


@lru_cache(maxsize=1024)
def _neat(N: int, m: int, l: int, order) -> QSeries:
    def term(sign):
        def t(idx):
            j, k = idx
            n = k - j
            e = Fraction(n * (n - 1), 2) - N * j * k + Fraction(k * (m - l), 2) + Fraction(j * (m + l), 2)
            return (sign * (-1) ** (n % 2), e)
        return t

    num = (sum_converging(term(1), order, domain=("P", "NP"))
           + sum_converging(term(-1), order, domain=("NP", "P")))
    return _divide_by_qinf_cubed(num, order)


def string_fn_neatform(N: int, m: int, l: int, order) -> QSeries:
    """Integer-level string function from the (j, k) double sum."""
    if N < 1:
        raise PreconditionError("N must be a positive integer")
    _check(1, N + 2, m, l)
    return _neat(N, m, l, _finite(order))


def _lattice_sum(N: int, l: int, congruent, order, weight) -> QSeries:
    """Sum over n in Z_+^{N-1} passing `congruent` of q^{n Cinv (n - e_l)} * weight(n, e)."""
    if N == 1:
        if not congruent(Fraction(0)):
            return QSeries.zero(order)
        return weight((), Fraction(0))
    cinv = cartan_inverse_a(N)
    dim = N - 1
    el = [1 if (k + 1) == l else 0 for k in range(dim)]

    def term(n):
        first = sum(cinv[0][k] * n[k] for k in range(dim))
        if not congruent(first):
            return None
        diff = [n[k] - el[k] for k in range(dim)]
        e = sum(n[a] * cinv[a][b] * diff[b] for a in range(dim) for b in range(dim))
        if e >= order:
            return None
        return weight(n, e)

    return sum_converging(term, order, domain=("N",) * dim)


@lru_cache(maxsize=1024)
def _lp(N: int, m: int, l: int, order) -> QSeries:
    pref = Fraction(m * m - l * l, 4 * N)
    inner_order = order - pref
    base = Fraction(m + l, 2 * N)

    def congruent(first):
        return (base + first).denominator == 1

    def weight(n, e):
        out = QSeries.monomial(1, e, inner_order)
        for k in n:
            if k:
                out = out * qfac_inv(k, inner_order - e)
        return out.truncate(inner_order)

    s = _lattice_sum(N, l, congruent, inner_order, weight)
    return (s * qfac_inv(INF, inner_order)).truncate(inner_order).shift(pref)


def lp_string_fn(N: int, m: int, l: int, order) -> QSeries:
    """Integer-level string function as a constant-sign lattice sum over Z_+^{N-1}."""
    if N < 1:
        raise PreconditionError("N must be a positive integer")
    _check(1, N + 2, m, l)
    return _lp(N, m, l, _finite(order))


def level1_string_fn(m: int, l: int, order) -> QSeries:
    """The level-one closed form q^{(m^2-l^2)/4}/(q)_inf."""
    _check(1, 3, m, l)
    order = _finite(order)
    e = Fraction(m * m - l * l, 4)
    return (qfac_inv(INF, order - e)).shift(e)


def level_minus_half_theta(m: int, l: int, order) -> QSeries:
    """Level -1/2 form with a one-sided theta-type sum over (q)_inf^2."""
    _check(2, 3, m, l)
    order = _finite(order)
    pref = Fraction(m - l, 2)
    inner = order - pref
    s = sum_converging(lambda i: ((-1) ** (i % 2), Fraction(i * (i + 2 * m + 1), 2)), inner, domain="N")
    return (s * inverse_qinf_power(2, inner - min(s.valuation, 0))).truncate(inner).shift(pref)


def level_minus_half_constant_sign(m: int, l: int, order) -> QSeries:
    """Level -1/2 form sum_r q^r/((q)_r (q)_{r+m})."""
    _check(2, 3, m, l)
    order = _finite(order)
    pref = Fraction(m - l, 2)
    inner = order - pref

    def term(r):
        if r + m < 0 or r >= inner:
            return None
        return (qfac_inv(r, inner - r) * qfac_inv(r + m, inner - r)).shift(r)

    return sum_converging(term, inner, domain="N", min_shells=max(0, -m)).shift(pref)


def level_minus_half_heine(m: int, l: int, order) -> QSeries:
    """Level -1/2 form (1/(q)_inf) sum_r q^{r(r+m+1)}/((q)_r (q)_{r+m})."""
    _check(2, 3, m, l)
    order = _finite(order)
    pref = Fraction(m - l, 2)
    inner = order - pref

    def term(r):
        e = r * (r + m + 1)
        if r + m < 0 or e >= inner:
            return None
        return (qfac_inv(r, inner - e) * qfac_inv(r + m, inner - e)).shift(e)

    s = sum_converging(term, inner, domain="N", min_shells=max(0, -m))
    return (s * qfac_inv(INF, inner)).truncate(inner).shift(pref)


@lru_cache(maxsize=4096)
def _cx(p: int, pp: int, m: int, l: int, order) -> QSeries:
    def term(r):
        L = 2 * r + m
        if L < 0 or r + m < 0:
            return None
        x = X(p, pp, 0, l + 1, L, 1, order)
        if x.is_zero():
            return x
        v = x.valuation
        if v >= order:
            return None
        return (x * qfac_inv(r, order - v) * qfac_inv(r + m, order - v)).truncate(order)

    return sum_converging(term, order, domain="N", min_shells=max(0, -m) + pp)


def cx_string_fn(p: int, pp: int, m: int, l: int, order) -> QSeries:
    """String function as a sum of configuration sums over (q)_r (q)_{r+m}."""
    _check(p, pp, m, l)
    if m < 0:
        raise PreconditionError("the configuration-sum expansion needs m >= 0")
    return _cx(p, pp, m, l, _finite(order))


def parafermion_char(p: int, pp: int, m: int, l: int, order) -> QSeries:
    """(q)_inf times the string function; the q^{1/24} of eta is not included."""
    c = string_fn(p, pp, m, l, order)
    order = _finite(order)
    v = c.valuation
    if v == INF:
        return c
    return (c * poch(mono(1), INF, order - min(v, 0))).truncate(order)


def unnormalized_offset(p: int, pp: int, m: int, l: int) -> Fraction:
    """Exponent shift between the normalized and the unnormalized string function.

    The unnormalized function equals q^offset times the normalized one,
    where offset = (l+1)^2/(4(N+2)) - m^2/(4N) - 1/8 with N = p'/p - 2; the
    -1/8 collects the q-power of eta^3.
    """
    _check(p, pp, m, l)
    N = Fraction(pp, p) - 2
    if N == 0:
        raise PreconditionError("level zero has no string-function offset")
    return Fraction((l + 1) ** 2) / (4 * (N + 2)) - Fraction(m * m) / (4 * N) - Fraction(1, 8)
