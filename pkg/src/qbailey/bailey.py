"""Bailey pairs, conjugate Bailey pairs and the transforms that connect them.

All pairs are taken relative to a = q^eta.  Sequences are evaluated lazily:
each component is a function (L, order) -> QSeries, and the verifiers
check the defining relations coefficient by coefficient below `order`.

Pochhammer arguments built from rho parameters are signed monomials; the
value None stands for the limit rho -> infinity.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .configsum import X, PreconditionError
from .fermion import a_type_lattice_sum
from .qtools import MonomialArg, mono, poch, poch_reciprocal, qbinomial, qfac, qfac_inv
from .report import IdentityReport, timed_report
from .series import INF, QSeries, _order_value, equal_to_order, sum_converging
from .stringfunc import _lattice_sum, _sum_pairs, string_fn

Rho = Optional[MonomialArg]


class SeriesSequence:
    """A sequence L -> QSeries with a memo keyed by (L, order)."""

    def __init__(self, fn: Callable[[int, object], QSeries], name: str = ""):
        self._fn = fn
        self.name = name
        self._memo: dict = {}
        self._lock = threading.Lock()

    def __call__(self, L: int, order=INF) -> QSeries:
        key = (L, _order_value(order))
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._fn(L, key[1])
        with self._lock:
            self._memo[key] = value
        return value

    def __repr__(self):
        return f"SeriesSequence({self.name or self._fn.__name__})"


@dataclass(frozen=True)
class BaileyPair:
    eta: Fraction
    alpha: SeriesSequence
    beta: SeriesSequence
    name: str = "bailey-pair"


@dataclass(frozen=True)
class ConjugateBaileyPair:
    eta: Fraction
    gamma: SeriesSequence
    delta: SeriesSequence
    name: str = "conjugate-pair"
    # delta_L may vanish for L below this index; the verifier keeps summing past it
    lead: int = 0
    params: dict = field(default_factory=dict)


def _times(x: QSeries, make: Callable[[object], QSeries], order) -> QSeries:
    """x times make(o), where make(o) has valuation >= 0 and is reliable below o."""
    if order == INF:
        return x * make(INF)
    if x.is_zero():
        return QSeries.zero(order)
    v = x.valuation
    if v >= order:
        return QSeries.zero(order)
    return (x * make(order - v)).truncate(order)


def _aq(eta) -> MonomialArg:
    return mono(Fraction(eta) + 1)


# ----------------------------------------------------------------------
# Defining relations


def bailey_rhs(bp: BaileyPair, L: int, order) -> QSeries:
    """sum_{r=0}^{L} alpha_r / ((q)_{L-r} (aq)_{L+r})."""
    total = QSeries.zero(order)
    aq = _aq(bp.eta)
    for r in range(L + 1):
        a = bp.alpha(r, order)
        total = total + _times(
            a, lambda o, r=r: (qfac_inv(L - r, o) * poch_reciprocal(aq, L + r, o)).truncate(o), order)
    return total


def conjugate_rhs(cbp: ConjugateBaileyPair, L: int, order, min_shells: int = 0) -> QSeries:
    """sum_{r>=L} delta_r / ((q)_{r-L} (aq)_{r+L}), summed until it settles."""
    aq = _aq(cbp.eta)

    def term(k):
        d = cbp.delta(L + k, order)
        if d.is_zero() or d.valuation >= order:
            return None
        return _times(d, lambda o: (qfac_inv(k, o) * poch_reciprocal(aq, 2 * L + k, o)).truncate(o), order)

    hint = max(0, cbp.lead - L) + min_shells + 1
    return sum_converging(term, order, domain="N", min_shells=hint)


def verify_bailey_pair(bp: BaileyPair, Lmax: int, order) -> IdentityReport:
    order = _order_value(order)

    def run():
        parts = []
        for L in range(Lmax + 1):
            lhs = bp.beta(L, order)
            rhs = bailey_rhs(bp, L, order)
            parts.append((f"L={L}", equal_to_order(lhs, rhs, order)))
        return parts

    return timed_report(f"bailey-pair:{bp.name}", {"eta": bp.eta, "Lmax": Lmax}, order, run)


def verify_conjugate_pair(cbp: ConjugateBaileyPair, Lmax: int, order, min_shells: int = 0) -> IdentityReport:
    order = _order_value(order)
    if order == INF:
        raise PreconditionError("conjugate pairs need a finite order")

    def run():
        parts = []
        for L in range(Lmax + 1):
            lhs = cbp.gamma(L, order)
            rhs = conjugate_rhs(cbp, L, order, min_shells)
            parts.append((f"L={L}", equal_to_order(lhs, rhs, order)))
        return parts

    params = {"eta": cbp.eta, "Lmax": Lmax, **cbp.params}
    return timed_report(f"conjugate-pair:{cbp.name}", params, order, run)


# ----------------------------------------------------------------------
# Bailey pairs


def _kronecker(L: int, order) -> QSeries:
    return QSeries.one() if L == 0 else QSeries.zero()


def initial_pair() -> BaileyPair:
    """alpha_L = (-1)^L q^{C(L,2)} (1 + q^L), beta_L = [L == 0], relative to 1."""

    def alpha(L, order):
        if L == 0:
            return QSeries.one()
        sign = (-1) ** L
        e = L * (L - 1) // 2
        return QSeries({e: sign, e + L: sign}, denom=1)

    return BaileyPair(Fraction(0), SeriesSequence(alpha, "initial-alpha"),
                      SeriesSequence(_kronecker, "delta"), "initial")


def rogers_pair() -> BaileyPair:
    """alpha_L = (-1)^L q^{L(3L-1)/2} (1 + q^L), beta_L = 1/(q)_L, relative to 1."""

    def alpha(L, order):
        if L == 0:
            return QSeries.one()
        sign = (-1) ** L
        e = L * (3 * L - 1) // 2
        return QSeries({e: sign, e + L: sign}, denom=1)

    return BaileyPair(Fraction(0), SeriesSequence(alpha, "rogers-alpha"),
                      SeriesSequence(lambda L, o: qfac_inv(L, o), "1/(q)_L"), "rogers")


def rogers_pair_shifted() -> BaileyPair:
    """alpha_L = (-1)^L q^{L(3L+1)/2} (1 - q^{2L+1})/(1 - q), beta_L = 1/(q)_L, relative to q."""

    def alpha(L, order):
        sign = (-1) ** L
        e = L * (3 * L + 1) // 2
        # (1 - q^{2L+1})/(1 - q) = 1 + q + ... + q^{2L}
        return QSeries({e + k: sign for k in range(2 * L + 1)}, denom=1)

    return BaileyPair(Fraction(1), SeriesSequence(alpha, "rogers-q-alpha"),
                      SeriesSequence(lambda L, o: qfac_inv(L, o), "1/(q)_L"), "rogers-q")


def unit_pair(eta: int) -> BaileyPair:
    """alpha_L = (1 - a q^{2L}) (a)_L (-1)^L q^{C(L,2)} / ((1 - a)(q)_L), beta_L = [L == 0].

    The factor (a)_L/(1 - a) is read as (aq)_{L-1}, so a = 1 is allowed.
    """
    if eta < 0:
        raise PreconditionError("eta must be nonnegative")
    aq = mono(eta + 1)

    def alpha(L, order):
        if L == 0:
            return QSeries.one()
        sign = (-1) ** L
        num = poch(aq, L - 1) * QSeries({0: 1, 2 * L + eta: -1}, denom=1)
        num = num.shift(L * (L - 1) // 2).scale(sign)
        # exact whenever (q)_L divides the numerator, e.g. always at a = 1
        quo = num.poly_divide(qfac(L))
        if quo is not None:
            return quo
        if order == INF:
            raise PreconditionError("alpha_L is not a polynomial here; pass a finite order")
        return (num * qfac_inv(L, order)).truncate(order)

    return BaileyPair(Fraction(eta), SeriesSequence(alpha, "unit-alpha"),
                      SeriesSequence(_kronecker, "delta"), f"unit(eta={eta})")


# ----------------------------------------------------------------------
# rho-dependent factors shared by the transform and the Saalschutz pair


def _rho_weight(rho1: Rho, rho2: Rho, eta, r: int) -> QSeries:
    """(rho1)_r (rho2)_r (aq/(rho1 rho2))^r, with the rho -> infinity limits."""
    eta = Fraction(eta)
    if rho1 is None and rho2 is None:
        return QSeries.monomial(1, r * r + eta * r)
    if rho1 is None or rho2 is None:
        rho = rho2 if rho1 is None else rho1
        # (rho_inf)_r rho_inf^{-r} -> (-1)^r q^{C(r,2)}
        base = _aq(eta).over(rho)
        lead = QSeries.monomial((-1) ** r * base.sign ** r, Fraction(r * (r - 1), 2) + base.exponent * r)
        return lead * poch(rho, r)
    ratio = _aq(eta).over(rho1.times(rho2))
    return poch(rho1, r) * poch(rho2, r) * ratio.power(r)


def _rho_den(rho: Rho, eta, n, order) -> QSeries:
    """1/(aq/rho)_n, or 1 in the limit."""
    if rho is None:
        return QSeries.one(order)
    return poch_reciprocal(_aq(eta).over(rho), n, order)


def _rho_prod(rho1: Rho, rho2: Rho, eta, n, order=INF) -> QSeries:
    """(aq/(rho1 rho2))_n, or 1 if either rho is infinite."""
    if rho1 is None or rho2 is None:
        return QSeries.one(order)
    return poch(_aq(eta).over(rho1.times(rho2)), n, order)


def _is_minus_one(rho: Rho, eta) -> bool:
    if rho is None:
        return False
    arg = _aq(eta).over(rho)
    return arg.sign == -1 and arg.exponent == 0


def _check_rho(rho1: Rho, rho2: Rho, eta, allow_minus_one: bool = False) -> None:
    for rho in (rho1, rho2):
        if rho is None or (allow_minus_one and _is_minus_one(rho, eta)):
            continue
        arg = _aq(eta).over(rho)
        if arg.exponent <= 0 and arg.exponent.denominator == 1:
            raise PreconditionError(
                f"aq/rho = {'-' if arg.sign < 0 else ''}q^{arg.exponent} has no integral inverse Pochhammer")


def _raise(order, factor: QSeries):
    """The order a series needs so that its product with `factor` is good to `order`."""
    if order == INF or factor.is_zero() or factor.valuation >= 0:
        return order
    return order - factor.valuation


def _doubled_den(n, order) -> QSeries:
    """2/(-1)_n: 2 at n = 0 and 1/(-q)_{n-1} afterwards."""
    if n == 0:
        return QSeries.one(order).scale(2)
    return poch_reciprocal(mono(1, -1), n - 1, order)


def bailey_transform(bp: BaileyPair, rho: tuple[Rho, Rho] = (None, None)) -> BaileyPair:
    """The pair (alpha', beta') obtained from (alpha, beta) with parameters rho1, rho2.

    When aq/rho = -1 for one or both parameters the returned pair is
    (c alpha', c beta') with c = 2 or 4, which keeps every coefficient integral.
    """
    rho1, rho2 = rho
    eta = bp.eta
    _check_rho(rho1, rho2, eta, allow_minus_one=True)

    # aq/rho = -1 puts a factor 1/2 into every 1/(aq/rho)_L with L >= 1; the
    # relation is linear, so the whole pair is returned multiplied by 2 instead
    doubled = [_is_minus_one(rho1, eta), _is_minus_one(rho2, eta)]

    def den(L, o):
        out = QSeries.one(o)
        for rh, dbl in zip((rho1, rho2), doubled):
            out = out * (_doubled_den(L, o) if dbl else _rho_den(rh, eta, L, o))
        return out.truncate(o)

    def alpha(L, order):
        weight = _rho_weight(rho1, rho2, eta, L)
        w = weight * bp.alpha(L, _raise(order, weight))
        if rho1 is None and rho2 is None:
            return w if order == INF else w.truncate(order)
        return _times(w, lambda o: den(L, o), order)

    def beta(L, order):
        total = QSeries.zero(order)
        for r in range(L + 1):
            weight = _rho_weight(rho1, rho2, eta, r) * _rho_prod(rho1, rho2, eta, L - r)
            b = bp.beta(r, _raise(order, weight))
            if b.is_zero():
                continue
            w = weight * b
            total = total + _times(w, lambda o, r=r: (den(L, o) * qfac_inv(L - r, o)).truncate(o), order)
        return total

    tag = "inf" if rho1 is None and rho2 is None else f"{_rho_text(rho1)},{_rho_text(rho2)}"
    if any(doubled):
        tag += f",x{2 ** sum(doubled)}"
    return BaileyPair(eta, SeriesSequence(alpha, "alpha'"), SeriesSequence(beta, "beta'"),
                      f"{bp.name}>[{tag}]")


def iterate_transform(bp: BaileyPair, steps: int, rho: tuple[Rho, Rho] = (None, None)) -> BaileyPair:
    out = bp
    for _ in range(steps):
        out = bailey_transform(out, rho)
    return out


def _rho_text(rho: Rho) -> str:
    if rho is None:
        return "inf"
    return f"{'-' if rho.sign < 0 else ''}q^{rho.exponent}"


# ----------------------------------------------------------------------
# Conjugate Bailey pairs


def gdinf_pair(eta=0) -> ConjugateBaileyPair:
    """gamma_L = a^L q^{L^2}/(aq)_inf and delta_L = a^L q^{L^2}."""
    eta = Fraction(eta)

    def delta(L, order):
        return QSeries.monomial(1, L * L + eta * L)

    def gamma(L, order):
        return _times(delta(L, order), lambda o: poch_reciprocal(_aq(eta), INF, o), order)

    return ConjugateBaileyPair(eta, SeriesSequence(gamma, "gdinf-gamma"),
                               SeriesSequence(delta, "gdinf-delta"), "gdinf", params={})


def gd_pair(eta, rho1: Rho, rho2: Rho, M=INF) -> ConjugateBaileyPair:
    """The q-Saalschutz conjugate pair with parameters rho1, rho2 and length M.

    For M = INF both sequences are multiplied by (q)_inf so that the limit
    is finite: gamma_L = W_L/((aq/rho1)_L (aq/rho2)_L (aq)_inf) and
    delta_L = W_L (aq/(rho1 rho2))_inf / ((aq/rho1)_inf (aq/rho2)_inf).
    """
    eta = Fraction(eta)
    _check_rho(rho1, rho2, eta)
    aq = _aq(eta)

    def gamma(L, order):
        if M != INF and L > M:
            return QSeries.zero(order)
        w = _rho_weight(rho1, rho2, eta, L)

        def rest(o):
            out = _rho_den(rho1, eta, L, o) * _rho_den(rho2, eta, L, o)
            if M == INF:
                out = out * poch_reciprocal(aq, INF, o)
            else:
                out = out * qfac_inv(M - L, o) * poch_reciprocal(aq, M + L, o)
            return out.truncate(o)

        return _times(w, rest, order)

    def delta(L, order):
        if M != INF and L > M:
            return QSeries.zero(order)
        w = _rho_weight(rho1, rho2, eta, L)
        if M == INF:
            if order == INF:
                raise PreconditionError("the infinite-length pair needs a finite order")
            # the prefactor has valuation >= 0 in every admissible case
            w = _times(w, lambda o: _rho_prod(rho1, rho2, eta, INF, o), order)
        else:
            w = w * _rho_prod(rho1, rho2, eta, M - L)

        def rest(o):
            out = _rho_den(rho1, eta, M, o) * _rho_den(rho2, eta, M, o)
            if M != INF:
                out = out * qfac_inv(M - L, o)
            return out.truncate(o)

        return _times(w, rest, order)

    params = {"rho1": _rho_text(rho1), "rho2": _rho_text(rho2), "M": "inf" if M == INF else M}
    return ConjugateBaileyPair(eta, SeriesSequence(gamma, "gd-gamma"), SeriesSequence(delta, "gd-delta"),
                               "gd", lead=0 if M == INF else M + 1, params=params)


def bs_pair(eta, k: int) -> ConjugateBaileyPair:
    """The pair with delta_L = r^L at r = q^k (k >= 1)."""
    if k < 1:
        raise PreconditionError("need r = q^k with k >= 1")
    eta = Fraction(eta)
    r = mono(k)

    def delta(L, order):
        return QSeries.monomial(1, k * L)

    def gamma(L, order):
        inner_order = order - k * L

        def term(n):
            e = Fraction(n * (n - 1), 2) + n * (eta + 2 * L + 1)
            if e >= inner_order:
                return None
            t = (poch(r, n) * QSeries.monomial((-1) ** n, e)).truncate(inner_order)
            return _times(t, lambda o: qfac_inv(n, o), inner_order)

        s = sum_converging(term, inner_order, domain="N")
        s = _times(s, lambda o: (poch_reciprocal(r, INF, o) * poch_reciprocal(_aq(eta), INF, o)).truncate(o),
                   inner_order)
        return s.shift(k * L)

    return ConjugateBaileyPair(eta, SeriesSequence(gamma, "bs-gamma"), SeriesSequence(delta, "bs-delta"),
                               "bs", params={"k": k})


def cbp_theorem41(eta: int, j: int) -> ConjugateBaileyPair:
    """Theta-type gamma against a difference of two Gaussian polynomials."""
    if eta < 0:
        raise PreconditionError("eta must be nonnegative")
    aq = mono(eta + 1)
    lin = 2 * j + eta + 1

    def delta(L, order):
        return qbinomial(2 * L + eta, L - j) - qbinomial(2 * L + eta, L - j - 1)

    def gamma(L, order):
        def inner(i):
            sign = (-1) ** (i % 2)
            base = Fraction(i * (i + 2 * L + eta), 2)
            return [(sign, base + Fraction(i * lin, 2)), (-sign, base - Fraction(i * lin, 2))]

        theta = _sum_pairs(inner, order)

        def recips(o):
            out = qfac_inv(INF, o) * qfac_inv(INF, o) * poch_reciprocal(aq, INF, o)
            return out.truncate(o)

        return _times(theta, recips, order)

    return ConjugateBaileyPair(Fraction(eta), SeriesSequence(gamma, "cbp1-gamma"),
                               SeriesSequence(delta, "cbp1-delta"), "cbp-thm41",
                               lead=max(0, j + 1), params={"j": j})


def cbp_corollary42(p: int, pp: int, eta: int, l: int) -> ConjugateBaileyPair:
    """gamma_L = (q)_eta C_{2L+eta,l} and delta_L = X_{0,l+1}(2L+eta, 1)."""
    if (l + eta) % 2:
        raise PreconditionError("l + eta must be even")
    if not 0 <= l <= pp - 2:
        raise PreconditionError(f"l={l} outside 0..{pp - 2}")
    if eta < 0:
        raise PreconditionError("eta must be nonnegative")
    qeta = qfac(eta)

    def gamma(L, order):
        return (qeta * string_fn(p, pp, 2 * L + eta, l, order)).truncate(order)

    def delta(L, order):
        return X(p, pp, 0, l + 1, 2 * L + eta, 1, order)

    return ConjugateBaileyPair(Fraction(eta), SeriesSequence(gamma, "cbp2-gamma"),
                               SeriesSequence(delta, "cbp2-delta"), "cbp-cor42",
                               lead=max(0, (l - eta) // 2 + 1), params={"p": p, "pp": pp, "l": l})


def cbp_higher_level(N: int, sigma: int, eta: int, l: int) -> ConjugateBaileyPair:
    """Level-N pair from A_{N-1} lattice sums in the congruence sector sigma."""
    if N < 1 or sigma not in (0, 1) or eta < 0 or not 0 <= l <= N:
        raise PreconditionError("need N >= 1, sigma in {0,1}, eta >= 0, 0 <= l <= N")
    if (l + eta + sigma * N) % 2:
        raise PreconditionError("l + eta + sigma*N must be even")
    aq = mono(eta + 1)

    def prefactor(L):
        return Fraction(L * L + eta * L, N)

    def congruence(L):
        return Fraction(2 * L + eta + l, 2 * N) - Fraction(sigma, 2)

    def delta(L, order):
        s = a_type_lattice_sum(N, 2 * L + eta, l, congruence(L))
        return s.shift(prefactor(L)) if order == INF else s.shift(prefactor(L)).truncate(order)

    def gamma(L, order):
        pref = prefactor(L)
        inner = order - pref
        if inner <= 0:
            return QSeries.zero(order)
        base = congruence(L)

        def congruent(first):
            return (base + first).denominator == 1

        def weight(n, e):
            out = QSeries.monomial(1, e, inner)
            for k in n:
                if k:
                    out = out * qfac_inv(k, inner - e)
            return out.truncate(inner)

        s = _lattice_sum(N, l, congruent, inner, weight)
        s = _times(s, lambda o: poch_reciprocal(aq, INF, o), inner)
        return s.shift(pref)

    return ConjugateBaileyPair(Fraction(eta), SeriesSequence(gamma, "level-gamma"),
                               SeriesSequence(delta, "level-delta"), "cbp-higher-level",
                               params={"N": N, "sigma": sigma, "l": l})


# ----------------------------------------------------------------------
# Pairing a Bailey pair with a conjugate pair


def bailey_sum_sides(bp: BaileyPair, cbp: ConjugateBaileyPair, order) -> tuple[QSeries, QSeries]:
    """(sum_L alpha_L gamma_L, sum_L beta_L delta_L), each summed until it settles."""
    if Fraction(bp.eta) != Fraction(cbp.eta):
        raise PreconditionError("the two pairs must be relative to the same a")
    order = _order_value(order)

    def left(L):
        a = bp.alpha(L, order)
        if a.is_zero() or a.valuation >= order:
            return None
        return _times(a, lambda o: cbp.gamma(L, o), order)

    def right(L):
        b = bp.beta(L, order)
        if b.is_zero() or b.valuation >= order:
            return None
        return _times(b, lambda o: cbp.delta(L, o).truncate(o), order)

    lhs = sum_converging(left, order, domain="N", min_shells=cbp.lead + 1)
    rhs = sum_converging(right, order, domain="N", min_shells=cbp.lead + 1)
    return lhs, rhs


def bailey_sum(bp: BaileyPair, cbp: ConjugateBaileyPair, order) -> IdentityReport:
    order = _order_value(order)

    def run():
        lhs, rhs = bailey_sum_sides(bp, cbp, order)
        return equal_to_order(lhs, rhs, order)

    return timed_report(f"bailey-sum:{bp.name}|{cbp.name}", {"eta": bp.eta, **cbp.params}, order, run)


def duality_swap(beta: SeriesSequence, delta: SeriesSequence, eta: int,
                 shift: Callable[[int], Fraction] = lambda L: Fraction(0)):
    """The exchanged sequences (beta-bar, delta-bar).

    beta-bar_L = q^{-shift(L)} delta_L/(q)_{2L+eta} and
    delta-bar_L = q^{shift(L)} beta_L (q)_{2L+eta}, so that every summand
    beta_L delta_L is left unchanged.
    """

    def beta_bar(L, order):
        d = delta(L, order).shift(-shift(L))
        return _times(d, lambda o: qfac_inv(2 * L + eta, o), order)

    def delta_bar(L, order):
        b = beta(L, order)
        out = b * qfac(2 * L + eta)
        out = out.shift(shift(L))
        return out if order == INF else out.truncate(order)

    return SeriesSequence(beta_bar, "beta-bar"), SeriesSequence(delta_bar, "delta-bar")
