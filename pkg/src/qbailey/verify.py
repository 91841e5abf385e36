"""Named identity checks and the suite runner.

Every check compares two independently expanded sides coefficient by
coefficient below a truncation order and returns an IdentityReport.
Checks made of several sub-identities report each part by label; the first
failing part is the one named in the report.

The grid manifest is a JSON document of the form

    {"entries": [
        {"identity": "cbp-cor42", "order": "30",
         "params": [{"p": 1, "pp": 3, "eta": 0, "l": 0, "Lmax": 5}, ...]},
        ...
    ]}

Each entry names a registered identity, one truncation order (an integer
or a fraction written "n/d") and a list of parameter maps; every map is
one check.  The built-in manifest `grid` lives next to this module.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from . import bailey as bl
from .configsum import X, PreconditionError
from .fermion import admissible_cases, build_cf_system, fermionic_X, fermionic_f, normalization
from .oracle import (PartSpec, fb_prefactor, fb_r_value, fb_r_value_alt, hook_partition_gen_fn,
                     partition_count_products, path_generating_fn)
from .qtools import (MonomialArg, mono, poch, poch_reciprocal, qbinomial, qfac, qfac_inv,
                     triple_product_lhs, triple_product_rhs)
from .report import BUDGET, FAIL, PASS, IdentityReport, timed_report
from .series import INF, Comparison, QSeries, _order_value, equal_to_order, sum_converging
from .stringfunc import (cx_string_fn, level1_string_fn, level_minus_half_constant_sign,
                         level_minus_half_heine, level_minus_half_theta, lp_string_fn,
                         sfdef2_string_fn, string_fn, string_fn_neatform)

__all__ = [
    "IdentityReport", "PASS", "FAIL", "BUDGET",
    "check_rr", "check_iter2_regression", "check_lemma43", "check_classical",
    "check_euler_generalized", "check_lemma_tech", "check_level_half_props", "check_ising_props",
    "check_corCF", "branching_fn", "check_bfid", "check_rrppp", "check_string_forms",
    "check_bose_fermi", "REGISTRY", "run_check", "run_entries", "load_manifest",
]


def _times(x: QSeries, make, order) -> QSeries:
    return bl._times(x, make, order)


def _recip_qinf(k: int):
    def make(o):
        out = QSeries.one(o)
        for _ in range(k):
            out = (out * qfac_inv(INF, o)).truncate(o)
        return out
    return make


def _monomial_sum(pairs, order) -> QSeries:
    acc: dict = {}
    for c, e in pairs:
        e = Fraction(e)
        if c and e < order:
            acc[e] = acc.get(e, 0) + c
    return QSeries({e: c for e, c in acc.items() if c}, order, denom=4)


# ----------------------------------------------------------------------
# Rogers-Ramanujan and the Bailey machinery


def _rr_parts(order, first: bool):
    if first:
        bp, cbp, residues, theta_x = bl.rogers_pair(), bl.gdinf_pair(0), (1, 4), 2
    else:
        bp, cbp, residues, theta_x = bl.rogers_pair_shifted(), bl.gdinf_pair(1), (2, 3), 4
    shift = 0 if first else 1
    lhs, rhs = bl.bailey_sum_sides(bp, cbp, order)
    parts = [("bailey-sum", equal_to_order(lhs, rhs, order))]

    # sum over L >= 0 of a^L q^{L^2} alpha_L, folded into a bilateral theta series
    def half(L):
        e = L * L + shift * L
        if e >= order:
            return None
        return (bp.alpha(L) * QSeries.monomial(1, e)).truncate(order)

    one_sided = sum_converging(half, order, domain="N")
    theta = triple_product_rhs(mono(theta_x), order, base=5)
    if not first:
        theta = _times(theta, lambda o: qfac_inv(1, o), order)
    parts.append(("triple-product", equal_to_order(one_sided, theta, order)))
    parts.append(("theta-series", equal_to_order(triple_product_lhs(mono(theta_x), order, base=5),
                                                 triple_product_rhs(mono(theta_x), order, base=5), order)))

    product = (poch_reciprocal(mono(residues[0]), INF, order, 5)
               * poch_reciprocal(mono(residues[1]), INF, order, 5)).truncate(order)
    parts.append(("product-side", equal_to_order(lhs, product, order)))

    def direct(n):
        e = n * n + shift * n
        if e >= order:
            return None
        return qfac_inv(n, order - e).shift(e)

    fermionic = sum_converging(direct, order, domain="N")
    parts.append(("direct", equal_to_order(fermionic, product, order)))
    small = min(order, 40)
    counted = partition_count_products(PartSpec(5, residues), int(small))
    parts.append(("partitions", equal_to_order(fermionic.truncate(small), counted, small)))
    return parts


def check_rr(order=200) -> IdentityReport:
    """Both Rogers-Ramanujan identities, through the Bailey lemma and directly."""
    order = _order_value(order)

    def run():
        return ([(f"first/{lbl}", c) for lbl, c in _rr_parts(order, True)]
                + [(f"second/{lbl}", c) for lbl, c in _rr_parts(order, False)])

    return timed_report("rr", {}, order, run)


def check_iter2_regression(Lmax=50, order=200) -> IdentityReport:
    """The infinite-rho transform of the initial pair is the Rogers pair."""
    order = _order_value(order)

    def run():
        moved = bl.bailey_transform(bl.initial_pair())
        target = bl.rogers_pair()
        parts = []
        for L in range(Lmax + 1):
            a, b = moved.alpha(L), target.alpha(L)
            ok = a.is_exact and b.is_exact and a == b
            parts.append((f"alpha L={L}", equal_to_order(a, b, INF) if ok else equal_to_order(a, b, order)))
            parts.append((f"beta L={L}", equal_to_order(moved.beta(L, order), target.beta(L, order), order)))
        return parts

    return timed_report("iter2-regression", {"Lmax": Lmax}, order, run)


# ----------------------------------------------------------------------
# The lemma behind the theta-type conjugate pairs


def check_lemma43(alpha_exp: int, beta_exp: int, order=35) -> IdentityReport:
    """Both sides of the two-parameter lemma at a = q^alpha_exp, b = q^beta_exp."""
    order = _order_value(order)
    A, B = alpha_exp, beta_exp
    aq, bq = mono(A + 1), mono(B + 1)

    def run():
        def term(r):
            if r >= order + 1 and r > 0:
                return None
            # (ab)_{2r}/(ab)_r read as (ab q^r)_r so that a b = 1 is allowed
            lead = poch(mono(A + B + r), r)

            def rest(o):
                brace = (poch_reciprocal(aq, r - 1, o) * poch_reciprocal(bq, r, o)
                         - poch_reciprocal(aq, r, o) * poch_reciprocal(bq, r - 1, o))
                return (brace * qfac_inv(r, o)).truncate(o)

            return _times(lead, rest, order)

        lhs = sum_converging(term, order, domain="N")

        def pairs():
            i = 1
            while i * (i - 1) // 2 < order:
                sign = (-1) ** i
                e = i * (i - 1) // 2
                yield sign, e + A * i
                yield -sign, e + B * i
                i += 1

        theta = _monomial_sum(pairs(), order)
        rhs = _times(theta, lambda o: (qfac_inv(INF, o) * poch_reciprocal(aq, INF, o)
                                       * poch_reciprocal(bq, INF, o)).truncate(o), order)
        parts = [("lemma", equal_to_order(lhs, rhs, order))]
        if A == B:
            parts.append(("vanishes", equal_to_order(lhs, QSeries.zero(order), order)))
        return parts

    return timed_report("lemma43", {"alpha": A, "beta": B}, order, run)


# ----------------------------------------------------------------------
# Classical summation and transformation formulas at monomial arguments


def parse_monomial(text) -> Optional[MonomialArg]:
    """Parse "q^e", "-q^e", "q", "1", "-1" ("0" and "inf" give None)."""
    if isinstance(text, MonomialArg) or text is None:
        return text
    t = str(text).replace(" ", "")
    if t in ("0", "inf", "oo"):
        return None
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    if t == "1":
        return MonomialArg(sign, Fraction(0))
    if t == "q":
        return MonomialArg(sign, Fraction(1))
    if t.startswith("q^"):
        return MonomialArg(sign, Fraction(t[2:].strip("()")))
    raise ValueError(f"cannot read {text!r} as a signed power of q")


def _scaled_limit(x: Optional[MonomialArg], c: MonomialArg, k: int) -> QSeries:
    """(c/x)_k x^k, tending to (-c)^k q^{C(k,2)} as x -> 0."""
    if x is None:
        return QSeries.monomial((-c.sign) ** k, c.exponent * k + Fraction(k * (k - 1), 2))
    return poch(c.over(x), k) * x.power(k)


def _normalized_poch(x: Optional[MonomialArg], k: int) -> QSeries:
    """(x)_k x^{-k}, tending to (-1)^k q^{C(k,2)} as x -> infinity."""
    if x is None:
        return QSeries.monomial((-1) ** k, Fraction(k * (k - 1), 2))
    return poch(x, k) * QSeries.monomial(x.sign ** k, -x.exponent * k)


def _hyper_sum(term, order) -> QSeries:
    def t(k):
        out = term(k)
        if out is None or out.is_zero() or out.valuation >= order:
            return None
        return out
    return sum_converging(t, order, domain="N", min_shells=2)


def _classical_qcv(params):
    n = int(params.get("n", 3))
    c = parse_monomial(params.get("c", "q^-6"))
    a = parse_monomial(params.get("a", f"q^{c.exponent + n}"))
    ratio = c.shifted(n).over(a)
    lhs = QSeries.zero()
    for k in range(n + 1):
        core = QSeries.monomial((-1) ** k, Fraction(k * (k - 1), 2) - n * k) * qbinomial(n, k)
        lhs = lhs + poch(a, k) * core * ratio.power(k) * poch(c.shifted(k), n - k)
    rhs = poch(c.over(a), n)
    return [("chu-vandermonde", equal_to_order(lhs, rhs, INF))], {"n": n, "a": _mtext(a), "c": _mtext(c)}


def _classical_heine(params, order):
    m = int(params.get("m", 0))
    a = parse_monomial(params.get("a", "0"))
    b = parse_monomial(params.get("b", "0"))
    c = parse_monomial(params.get("c", f"q^{m + 1}"))
    z = parse_monomial(params.get("z", "q"))
    outer = z if a is None or b is None else a.times(b).times(z).over(c)
    if z.exponent <= 0 or outer.exponent <= 0:
        raise PreconditionError("both series arguments must be positive powers of q")

    def lhs_term(k):
        num = (poch(a, k) if a else QSeries.one()) * (poch(b, k) if b else QSeries.one()) * z.power(k)
        return _times(num, lambda o: (qfac_inv(k, o) * poch_reciprocal(c, k, o)).truncate(o), order)

    def rhs_term(k):
        num = _scaled_limit(a, c, k) * _scaled_limit(b, c, k) * z.over(c).power(k)
        return _times(num, lambda o: (qfac_inv(k, o) * poch_reciprocal(c, k, o)).truncate(o), order)

    lhs = _hyper_sum(lhs_term, order)
    inner = _hyper_sum(rhs_term, order)

    def pref(o):
        out = poch_reciprocal(z, INF, o)
        if a is not None and b is not None:
            out = out * poch(a.times(b).times(z).over(c), INF, o)
        return out.truncate(o)

    rhs = _times(inner, pref, order)
    return [("heine", equal_to_order(lhs, rhs, order))], {
        "a": _mtext(a, "0"), "b": _mtext(b, "0"), "c": _mtext(c), "z": _mtext(z)}


def _classical_qktw(params, order):
    r = int(params.get("r", 1))
    m = int(params.get("m", 0))
    a = parse_monomial(params.get("a", "inf"))
    b = parse_monomial(params.get("b", "inf"))
    c = parse_monomial(params.get("c", f"q^{2 * r + 1}"))
    d = parse_monomial(params.get("d", f"q^{r - m + 1}"))
    e = parse_monomial(params.get("e", f"q^{r + m + 2}"))
    de_c = d.times(e).over(c)
    arg = de_c
    for x in (a, b):
        if x is not None:
            arg = arg.over(x)
    if arg.exponent <= 0 or (a is not None and e.over(a).exponent <= 0):
        raise PreconditionError("both series arguments must be positive powers of q")

    def lhs_term(k):
        num = _normalized_poch(a, k) * _normalized_poch(b, k) * poch(c, k) * de_c.power(k)
        return _times(num, lambda o: (qfac_inv(k, o) * poch_reciprocal(d, k, o)
                                      * poch_reciprocal(e, k, o)).truncate(o), order)

    def rhs_term(k):
        num = _normalized_poch(a, k) * e.power(k) * poch(d.over(c), k)
        if b is not None:
            num = num * poch(d.over(b), k)

        def den(o):
            out = qfac_inv(k, o) * poch_reciprocal(d, k, o)
            if b is not None:
                out = out * poch_reciprocal(de_c.over(b), k, o)
            return out.truncate(o)

        return _times(num, den, order)

    lhs = _hyper_sum(lhs_term, order)
    inner = _hyper_sum(rhs_term, order)

    def pref(o):
        out = poch_reciprocal(e, INF, o)
        if a is not None:
            out = out * poch(e.over(a), INF, o)
        if b is not None:
            out = out * poch(de_c.over(b), INF, o)
        if a is not None and b is not None:
            out = out * poch_reciprocal(de_c.over(a).over(b), INF, o)
        return out.truncate(o)

    rhs = _times(inner, pref, order)
    return [("kummer-thomae-whipple", equal_to_order(lhs, rhs, order))], {
        "a": _mtext(a, "inf"), "b": _mtext(b, "inf"), "c": _mtext(c), "d": _mtext(d), "e": _mtext(e)}


def _classical_qbinthm(params, order):
    n = int(params.get("n", 6))
    a = parse_monomial(params.get("a", "q"))
    lhs = poch(a, n)
    rhs = QSeries.zero()
    for k in range(n + 1):
        rhs = rhs + a.power(k).scale((-1) ** k) * QSeries.monomial(1, Fraction(k * (k - 1), 2)) * qbinomial(n, k)
    parts = [("finite", equal_to_order(lhs, rhs, INF))]
    if a.exponent > 0:
        def term(k):
            e = a.exponent * k + Fraction(k * (k - 1), 2)
            if e >= order:
                return None
            return qfac_inv(k, order - e).shift(e).scale((-a.sign) ** k)
        limit = sum_converging(term, order, domain="N")
        parts.append(("limit", equal_to_order(limit, poch(a, INF, order), order)))
    return parts, {"n": n, "a": _mtext(a)}


def _classical_xq(params, order):
    x = parse_monomial(params.get("x", "q^2"))
    if x.exponent <= 0:
        raise PreconditionError("x must be a positive power of q")

    def term(k):
        e = x.exponent * k
        if e >= order:
            return None
        return qfac_inv(k, order - e).shift(e).scale(x.sign ** k)

    lhs = sum_converging(term, order, domain="N")
    rhs = poch_reciprocal(x, INF, order)
    return [("geometric", equal_to_order(lhs, rhs, order))], {"x": _mtext(x)}


def _mtext(x, none="inf"):
    if x is None:
        return none
    sign = "-" if x.sign < 0 else ""
    return f"{sign}q^{x.exponent}"


CLASSICAL = {
    "qcv": lambda params, order: _classical_qcv(params),
    "heine": _classical_heine,
    "qktw": _classical_qktw,
    "qbinthm": _classical_qbinthm,
    "xq": _classical_xq,
}


def check_classical(identity: str, params: dict | None = None, order=30) -> IdentityReport:
    """One classical q-series formula at monomial arguments."""
    params = dict(params or {})
    order = _order_value(order)
    if identity not in CLASSICAL:
        raise PreconditionError(f"unknown classical identity {identity!r}")
    used: dict = {}

    def run():
        parts, shown = CLASSICAL[identity](params, order)
        used.update(shown)
        return parts

    rep = timed_report(f"classical-{identity}", params, order, run)
    rep.params = {**params, **used}
    return rep


# ----------------------------------------------------------------------
# Generalized Euler identity for string functions


def _string_fn_any(p, pp, m, l, order) -> QSeries:
    return string_fn(p, pp, m, l, order)


def bilateral_euler_sum(p, pp, l, shift, order) -> QSeries:
    """sum over all integers L of (-1)^L q^{C(L,2)} C_{2L+shift,l}."""

    def term(L):
        e = Fraction(L * (L - 1), 2)
        if e >= order:
            return None
        c = _string_fn_any(p, pp, 2 * L + shift, l, order - e)
        return c.shift(e).scale((-1) ** (L % 2))

    return sum_converging(term, order, domain="Z")


def check_euler_generalized(p, pp, l, eta, order=40) -> IdentityReport:
    order = _order_value(order)
    if (l + eta) % 2:
        raise PreconditionError("l + eta must be even")
    if not 0 <= l <= pp - 2 or not 0 <= eta <= pp - 1:
        raise PreconditionError("need 0 <= l <= p'-2 and 0 <= eta <= p'-1")

    def run():
        total = bilateral_euler_sum(p, pp, l, eta, order)
        expected = QSeries.one(order) if l == eta else QSeries.zero(order)
        parts = [("bilateral", equal_to_order(total, expected, order))]
        lhs, rhs = bl.bailey_sum_sides(bl.unit_pair(eta), bl.cbp_corollary42(p, pp, eta, l), order)
        parts.append(("bailey-sum", equal_to_order(lhs, rhs, order)))
        return parts

    return timed_report("euler-generalized", {"p": p, "pp": pp, "l": l, "eta": eta}, order, run)


def check_lemma_tech(p, pp, l, eta, order=40) -> IdentityReport:
    """The rearrangement lemma with f_m the string function C_{m,l}."""
    order = _order_value(order)
    if (l + eta) % 2:
        raise PreconditionError("l + eta must be even")

    def factor(L):
        # (1 - q^{2L+eta}) (q^{L+1})_{eta-1}; at eta = 0 the quotient (1-q^{2L})/(1-q^L)
        if eta == 0:
            return QSeries.one() if L == 0 else QSeries({0: 1, L: 1}, denom=1)
        return QSeries({0: 1, 2 * L + eta: -1}, denom=1) * poch(mono(L + 1), eta - 1)

    def run():
        def term(L):
            e = Fraction(L * (L - 1), 2)
            if e >= order:
                return None
            c = _string_fn_any(p, pp, 2 * L + eta, l, order - e).shift(e).scale((-1) ** (L % 2))
            return (c * factor(L)).truncate(order)

        lhs = sum_converging(term, order, domain="N")
        rhs = QSeries.zero(order)
        for k in range(eta // 2 + 1):
            coef = qbinomial(eta, k) - qbinomial(eta, k - 1)
            rhs = rhs + (coef * bilateral_euler_sum(p, pp, l, eta - 2 * k, order)).truncate(order)
        return equal_to_order(lhs, rhs, order)

    return timed_report("lemma-tech", {"p": p, "pp": pp, "l": l, "eta": eta}, order, run)


# ----------------------------------------------------------------------
# Level 1/2 and level -2/3 closed forms


def schur_polynomials(L: int) -> dict:
    """The four polynomial closed forms for (p, p') = (2, 5), keyed by s."""

    def total(lo, hi, top, quad):
        out = QSeries.zero()
        for n in range(lo, hi + 1):
            out = out + qbinomial(top(n), n).shift(quad(n))
        return out

    return {
        1: (QSeries.one() + total(1, L - 1, lambda n: 2 * L - 2 - n, lambda n: n * (n + 1))).shift(L),
        2: total(0, L, lambda n: 2 * L - n, lambda n: n * n).shift(L),
        3: total(0, L - 1, lambda n: 2 * L - 1 - n, lambda n: n * n).shift(L - 1),
        4: total(0, L - 1, lambda n: 2 * L - 1 - n, lambda n: n * (n + 1)).shift(L - 1),
    }


def _r_display(pref, inner, order, r_weight=lambda r: Fraction(r)) -> QSeries:
    """q^pref/(q)_inf times sum_r q^{r_weight(r)} inner(r)/(q)_r, with inner(r) exact."""
    target = order - pref

    def term(r):
        e = r_weight(r)
        if e >= target:
            return None
        poly = inner(r)
        if poly.is_zero():
            return None
        return _times(poly.shift(e), lambda o: qfac_inv(r, o), target)

    s = sum_converging(term, target, domain="N", min_shells=2)
    return _times(s, _recip_qinf(1), target).shift(pref)


def level_half_display(which: int, m: int, order) -> QSeries:
    """Right-hand side of the level-1/2 fermionic display number `which` (1..4)."""

    def bounded(r, lo, hi, top, quad):
        out = QSeries.zero()
        for n in range(lo, hi + 1):
            out = out + qbinomial(top(n), n).shift(quad(n))
        return out

    if which == 1:
        # the leading 1 belongs to every bracket except r + 2m = 1, whose
        # configuration sum has odd length and vanishes
        return _r_display(m, lambda r: (QSeries.zero() if r + 2 * m == 1 else QSeries.one()) + bounded(
            r, 1, m + (r - 2) // 2, lambda n: r + 2 * m - n - 2, lambda n: n * (n + 1)), order)
    if which == 2:
        return _r_display(m, lambda r: bounded(
            r, 0, m + r // 2, lambda n: r + 2 * m - n, lambda n: n * n), order)
    if which == 3:
        return _r_display(m - 1, lambda r: bounded(
            r, 0, m + (r - 1) // 2, lambda n: r + 2 * m - n - 1, lambda n: n * n), order)
    if which == 4:
        return _r_display(m - 1, lambda r: bounded(
            r, 0, m + (r - 1) // 2, lambda n: r + 2 * m - n - 1, lambda n: n * (n + 1)), order)
    raise ValueError("display number must be 1..4")


_LEVEL_HALF_INDEX = {1: lambda m: (2 * m, 0), 2: lambda m: (2 * m + 1, 1),
                     3: lambda m: (2 * m, 2), 4: lambda m: (2 * m + 1, 3)}


def check_level_half_props(m: int, order=30, Lmax: int = 12) -> IdentityReport:
    order = _order_value(order)
    if m < 0:
        raise PreconditionError("m must be nonnegative")

    def run():
        parts = []
        for which in (1, 2, 3, 4):
            mm, l = _LEVEL_HALF_INDEX[which](m)
            parts.append((f"string {which}", equal_to_order(
                level_half_display(which, m, order), string_fn(2, 5, mm, l, order), order)))
        for L in range(Lmax + 1):
            polys = schur_polynomials(L)
            for s, poly in polys.items():
                length = 2 * L if s % 2 else 2 * L + 1
                parts.append((f"polynomial s={s} L={L}", equal_to_order(X(2, 5, 0, s, length, 1), poly, INF)))
        return parts

    return timed_report("level-half", {"m": m, "Lmax": Lmax}, order, run)


def half_sum(n: int, r: int, plus: bool) -> QSeries:
    """((-q^{1/2})_n + or - (-1)^r (q^{1/2})_n)/2, computed from the products."""
    a = poch(mono(Fraction(1, 2), -1), n)
    b = poch(mono(Fraction(1, 2)), n).scale((-1) ** (r % 2))
    return (a + b if plus else a - b).div_exact(2)


def half_sum_binomial(n: int, r: int, plus: bool) -> QSeries:
    """The same half-sum as a parity-restricted sum of q^{k^2/2} [n, k]."""
    out = QSeries.zero(denom=2)
    for k in range(n + 1):
        same = (k - r) % 2 == 0
        if same == plus:
            out = out + qbinomial(n, k).shift(Fraction(k * k, 2))
    return out


def level_minus_two_thirds_display(which: int, m: int, order) -> QSeries:
    """Right-hand sides of the three level -2/3 displays (the second carries q^{3/2})."""
    if which in (1, 2):
        plus = which == 1
        target = order - m

        def term(r):
            e = Fraction(r * r, 2) + (m + 1) * r
            if e >= target:
                return None
            poly = half_sum(r + m, r, plus).shift(e)
            return _times(poly, lambda o: (qfac_inv(r, o) * qfac_inv(r + 2 * m, o)).truncate(o), target)

        s = sum_converging(term, target, domain="N")
        return _times(s, _recip_qinf(1), target).shift(m)
    if which == 3:
        target = order - m

        def term(r):
            e = r * (r - 1) // 2 + (m + 2) * r
            if e >= target:
                return None
            poly = poch(mono(1, -1), r + m).shift(e)
            return _times(poly, lambda o: (qfac_inv(r, o) * qfac_inv(r + 2 * m + 1, o)).truncate(o), target)

        s = sum_converging(term, target, domain="N")
        return _times(s, _recip_qinf(1), target).shift(m)
    raise ValueError("display number must be 1..3")


def check_ising_props(m: int, order=30, Lmax: int = 12, nmax: int = 10) -> IdentityReport:
    order = _order_value(order)

    def run():
        parts = []
        for L in range(Lmax + 1):
            x1, x3 = X(3, 4, 0, 1, 2 * L, 1), X(3, 4, 0, 3, 2 * L, 1)
            for sign, label in ((1, "+"), (-1, "-")):
                lhs = x1 + x3.shift(Fraction(3, 2)).scale(sign)
                rhs = poch(mono(Fraction(1, 2), -sign), L).shift(L)
                parts.append((f"polynomial {label} L={L}", equal_to_order(lhs, rhs, INF)))
            parts.append((f"polynomial odd L={L}", equal_to_order(
                X(3, 4, 0, 2, 2 * L + 1, 1), poch(mono(1, -1), L).shift(L), INF)))
        parts.append(("string 1", equal_to_order(
            level_minus_two_thirds_display(1, m, order), string_fn(3, 4, 2 * m, 0, order), order)))
        shifted = string_fn(3, 4, 2 * m, 2, order - Fraction(3, 2)).shift(Fraction(3, 2))
        parts.append(("string 2", equal_to_order(level_minus_two_thirds_display(2, m, order), shifted, order)))
        parts.append(("string 3", equal_to_order(
            level_minus_two_thirds_display(3, m, order), string_fn(3, 4, 2 * m + 1, 1, order), order)))
        for n in range(nmax + 1):
            for r in (0, 1):
                for plus in (True, False):
                    parts.append((f"half-sum n={n} r={r} {'+' if plus else '-'}", equal_to_order(
                        half_sum(n, r, plus), half_sum_binomial(n, r, plus), INF)))
        return parts

    return timed_report("ising", {"m": m, "Lmax": Lmax}, order, run)


# ----------------------------------------------------------------------
# Fermionic string functions


def corcf_series(p: int, pp: int, m: int, sigma: int, which: str, order) -> tuple[QSeries, int, tuple]:
    """The fermionic r-sum for a string function; returns (series, l, (p, p') of the string function).

    `which` is "CF" or "CF2" for the primal level and "dual" or "dual2" for
    the dual level; (p, p') is the primal model with p < p' < 2p.
    """
    if not p < pp < 2 * p:
        raise PreconditionError("need p < p' < 2p")
    cf = build_cf_system(p, pp)
    length = cf.lengths[sigma]
    second = which in ("CF2", "dual2")
    l = pp - length - 1 if second else length - 1
    if l < 0 or l > pp - 2 or (l + m) % 2 or m < 0:
        raise PreconditionError("index out of range or parity mismatch")
    kind = "F0ps" if second else "F0s"
    delta = normalization(p, pp, kind, sigma, None)
    base_right = cf.u_vector(sigma)
    if second:
        base_right = tuple(x + y for x, y in zip(base_right, cf.u_vector(cf.d + 1)))
    dual = which in ("dual", "dual2")
    if dual:
        pref = Fraction(m * m - l * (l + 2), 4) - delta
    else:
        pref = delta + Fraction(m, 2)
    target = order - pref

    def term(r):
        e = r * (r + m) if dual else r
        # in the dual sum f itself has negative valuation, so only the
        # primal prefactor is a safe early cutoff
        if not dual and e >= target:
            return None
        left = tuple(x + y for x, y in zip(
            tuple((2 * r + m) * v for v in cf.unit(1)), cf.u_vector(0)))
        f = fermionic_f(cf, base_right, left) if dual else fermionic_f(cf, left, base_right)
        f = f.shift(e)
        if f.is_zero() or f.valuation >= target:
            return None
        return _times(f.truncate(target), lambda o: (qfac_inv(r, o) * qfac_inv(r + m, o)).truncate(o), target)

    s = sum_converging(term, target, domain="N", min_shells=2)
    string_model = (pp - p, pp) if dual else (p, pp)
    return s.shift(pref), l, string_model


def check_corCF(p: int, pp: int, m: int, sigma: int, which: str = "CF", order=25) -> IdentityReport:
    order = _order_value(order)

    def run():
        series, l, (sp, spp) = corcf_series(p, pp, m, sigma, which, order)
        return [("fermionic", equal_to_order(series, string_fn(sp, spp, m, l, order), order)),
                ("configuration-sum expansion", equal_to_order(cx_string_fn(sp, spp, m, l, order),
                                                               string_fn(sp, spp, m, l, order), order))]

    return timed_report("corcf", {"p": p, "pp": pp, "m": m, "sigma": sigma, "which": which}, order, run)


# ----------------------------------------------------------------------
# Branching functions and the Bose-Fermi identities


def branching_fn(p1: int, pp1: int, p2: int, pp2: int, r: int, l: int, s: int, order) -> QSeries:
    """sum_j q^{p1 j (p1' j + r)} (C_{2 p1' j + r - s, l} - C_{2 p1' j + r + s, l}) at model (p2, p2')."""
    order = _order_value(order)
    if (r - s - l) % 2:
        raise PreconditionError("r - s and l must have equal parity")

    def term(j):
        e = p1 * j * (pp1 * j + r)
        if e >= order:
            return None
        inner = order - e
        a = string_fn(p2, pp2, 2 * pp1 * j + r - s, l, inner)
        b = string_fn(p2, pp2, 2 * pp1 * j + r + s, l, inner)
        return (a - b).shift(e)

    return sum_converging(term, order, domain="Z")


def bfid_lhs(p1, pp1, p2, pp2, b, s, l, order) -> QSeries:
    r = fb_r_value(p1, pp1, b, b - 1)

    def term(j):
        e1 = j * (p1 * pp1 * j + r * pp1 - s * p1)
        e2 = (p1 * j + r) * (pp1 * j + s)
        out = None
        if e1 < order:
            out = string_fn(p2, pp2, 2 * pp1 * j + b - s, l, order - e1).shift(e1)
        if e2 < order:
            t = string_fn(p2, pp2, 2 * pp1 * j + b + s, l, order - e2).shift(e2)
            out = -t if out is None else out - t
        return out

    return sum_converging(term, order, domain="Z")


def bfid_rhs(p1, pp1, p2, pp2, b, s, l, order, fermionic: bool = False) -> QSeries:
    r = fb_r_value(p1, pp1, b, b - 1)
    eta = abs(b - s)
    first = (lambda n: fermionic_X(p1, pp1, r, s, b, n)) if fermionic else (lambda n: X(p1, pp1, r, s, n, b))
    second = ((lambda n: fermionic_X(p2, pp2, 0, l + 1, 1, n)) if fermionic
              else (lambda n: X(p2, pp2, 0, l + 1, n, 1)))

    def term(L):
        n = 2 * L + eta
        prod = first(n) * second(n)
        if prod.is_zero():
            return None
        if prod.valuation >= order:
            return None
        return _times(prod.truncate(order), lambda o: qfac_inv(n, o), order)

    lead = max(s, l + 1, b) + 2
    return sum_converging(term, order, domain="N", min_shells=lead)


def bfid_reductions(p1, pp1, p2, pp2, b, s, l, order) -> list:
    """(label, series) pairs that must equal the left-hand side when a level is an integer."""
    r = fb_r_value(p1, pp1, b, b - 1)
    out = []
    if p2 == 1:
        N2 = pp2 - 2
        e = Fraction(r * (2 * s - 2 * b - N2 * r), 4)
        if r % 2 == 0:
            bf = branching_fn(p1, pp1, p2, pp2, s, l, b + N2 * r, order - e)
            out.append(("integer second level, r even", bf.shift(e)))
        else:
            e2 = e + Fraction(N2 - 2 * l, 4)
            bf = branching_fn(p1, pp1, p2, pp2, s, N2 - l, b + N2 * r, order - e2)
            out.append(("integer second level, r odd", bf.shift(e2)))
    if p1 == 1:
        if r == 0 and b == 1:
            out.append(("integer first level, r=0", branching_fn(p1, pp1, p2, pp2, s, l, 1, order)))
        elif r == 1:
            out.append(("integer first level, r=1",
                        branching_fn(p1, pp1, p2, pp2, pp1 - s, l, pp1 - b, order)))
    return out


def _check_bfid_params(p1, pp1, p2, pp2, b, s, l):
    for p, pp in ((p1, pp1), (p2, pp2)):
        if not 1 <= p < pp or math.gcd(p, pp) != 1:
            raise PreconditionError(f"({p},{pp}) is not a coprime pair with p < p'")
    if not (1 <= b <= pp1 - 1 and 1 <= s <= pp1 - 1):
        raise PreconditionError("b and s must lie in 1..p1'-1")
    if not 0 <= l <= pp2 - 2:
        raise PreconditionError("l must lie in 0..p2'-2")
    if (abs(b - s) + l) % 2:
        raise PreconditionError("|b-s| + l must be even")


def check_bfid(p1, pp1, p2, pp2, b, s, l, order=25, fermionic: bool = False) -> IdentityReport:
    order = _order_value(order)
    _check_bfid_params(p1, pp1, p2, pp2, b, s, l)
    r = fb_r_value(p1, pp1, b, b - 1)

    def run():
        lhs = bfid_lhs(p1, pp1, p2, pp2, b, s, l, order)
        rhs = bfid_rhs(p1, pp1, p2, pp2, b, s, l, order, fermionic)
        parts = [("identity", equal_to_order(lhs, rhs, order))]
        for label, series in bfid_reductions(p1, pp1, p2, pp2, b, s, l, order):
            parts.append((label, equal_to_order(lhs, series, order)))
        if r == 0 and b == 1:
            swapped_rhs = bfid_rhs(p2, pp2, p1, pp1, 1, l + 1, s - 1, order, fermionic)
            parts.append(("swap right side", equal_to_order(rhs, swapped_rhs, order)))
            swapped_lhs = bfid_lhs(p2, pp2, p1, pp1, 1, l + 1, s - 1, order)
            parts.append(("swap left side", equal_to_order(lhs, swapped_lhs, order)))
        return parts

    params = {"p1": p1, "pp1": pp1, "p2": p2, "pp2": pp2, "b": b, "s": s, "l": l, "r": r}
    if fermionic:
        params["fermionic"] = True
    return timed_report("bfid", params, order, run)


# ----------------------------------------------------------------------
# Andrews-Gordon and Bressoud type identities


def rrppp_sides(p, pp, l, delta, k, i, order) -> tuple[QSeries, QSeries]:
    if delta not in (0, 1) or k < 2 or not 1 <= i <= k:
        raise PreconditionError("need delta in {0,1}, k >= 2 and 1 <= i <= k")
    if l % 2 or not 0 <= l <= pp - 2:
        raise PreconditionError("l must be even and lie in 0..p'-2")

    def left(L):
        e = Fraction(((2 * k + delta - 2) * L + 2 * k - 2 * i + delta) * L, 2)
        if e >= order:
            return None
        return string_fn(p, pp, 2 * L, l, order - e).shift(e).scale((-1) ** (L % 2))

    lhs = sum_converging(left, order, domain="Z")
    dim = k - 1
    step = 2 - delta

    def right(n):
        tails = [sum(n[j:]) for j in range(dim)]          # tails[j] = N_{j+1}
        e = sum(t * t for t in tails[1:]) + sum(tails[i - 1:])
        if e >= order:
            return None
        x = X(p, pp, 0, l + 1, 2 * tails[0], 1)
        if x.is_zero():
            return None
        w = x.shift(e)
        if w.valuation >= order:
            return None

        def den(o):
            out = poch_reciprocal(mono(step), n[-1], o, step)
            for nj in n[:-1]:
                out = out * qfac_inv(nj, o)
            return out.truncate(o)

        return _times(w.truncate(order), den, order)

    rhs = sum_converging(right, order, domain=("N",) * dim, min_shells=l // 2 + 1)
    return lhs, rhs


def check_rrppp(p, pp, l, delta, k, i, order=35) -> IdentityReport:
    order = _order_value(order)

    def run():
        lhs, rhs = rrppp_sides(p, pp, l, delta, k, i, order)
        parts = [("identity", equal_to_order(lhs, rhs, order))]
        if (p, pp) == (1, 3):
            modulus = 2 * k + delta
            prod = (poch(mono(i), INF, order, modulus) * poch(mono(modulus - i), INF, order, modulus)
                    * poch(mono(modulus), INF, order, modulus))
            prod = (prod * qfac_inv(INF, order)).truncate(order)
            parts.append(("product side", equal_to_order(lhs, prod, order)))
        return parts

    params = {"p": p, "pp": pp, "l": l, "delta": delta, "k": k, "i": i}
    return timed_report("rrppp", params, order, run)


# ----------------------------------------------------------------------
# String functions: agreement of the independent formulas


def check_string_forms(p, pp, m, l, order=25) -> IdentityReport:
    order = _order_value(order)

    def run():
        base = string_fn(p, pp, m, l, order)
        parts = [("double sum", equal_to_order(base, sfdef2_string_fn(p, pp, m, l, order), order)),
                 ("reflection", equal_to_order(base, string_fn(p, pp, -m, l, order), order)),
                 ("configuration-sum expansion", equal_to_order(base, cx_string_fn(p, pp, abs(m), l, order), order))]
        if p == 1:
            N = pp - 2
            parts.append(("integer-level double sum", equal_to_order(base, string_fn_neatform(N, m, l, order), order)))
            parts.append(("lattice sum", equal_to_order(base, lp_string_fn(N, m, l, order), order)))
            if N == 1:
                parts.append(("level one", equal_to_order(base, level1_string_fn(m, l, order), order)))
        if (p, pp) == (2, 3):
            for label, fn in (("theta form", level_minus_half_theta),
                              ("constant sign", level_minus_half_constant_sign),
                              ("transformed", level_minus_half_heine)):
                parts.append((label, equal_to_order(base, fn(m, l, order), order)))
        return parts

    return timed_report("string-forms", {"p": p, "pp": pp, "m": m, "l": l}, order, run)


def check_bose_fermi(p, pp, Lmax=20) -> IdentityReport:
    def run():
        parts = []
        for (r, s, b, L) in admissible_cases(p, pp, Lmax):
            parts.append((f"r={r} s={s} b={b} L={L}", equal_to_order(
                fermionic_X(p, pp, r, s, b, L), X(p, pp, r, s, L, b), INF)))
        return parts

    return timed_report("bose-fermi", {"p": p, "pp": pp, "Lmax": Lmax}, INF, run)


# ----------------------------------------------------------------------
# Brute-force oracles against the formulas


def path_r_label(p: int, pp: int, b: int, c: int) -> int:
    """The label r for (b, c); at c = p' the complementary floor is the valid one."""
    if c == pp:
        return fb_r_value_alt(p, pp, b, c)
    return fb_r_value(p, pp, b, c)


def check_paths(p, pp, s, b, c, L) -> IdentityReport:
    """Enumerated lattice-path sum against the prefactored configuration sum."""
    if not 0 <= c <= pp or abs(b - c) != 1:
        raise PreconditionError("c must be a neighbour of b in 0..p'")

    def run():
        r = path_r_label(p, pp, b, c)
        parts = []
        if 1 <= c <= pp - 1:
            parts.append(("labels agree", equal_to_order(QSeries.monomial(1, r),
                                                         QSeries.monomial(1, fb_r_value_alt(p, pp, b, c)), INF)))
        lhs = path_generating_fn(p, pp, s, b, c, L)
        if (L + s + b) % 2:
            rhs = QSeries.zero()      # no path has the wrong parity
        else:
            rhs = X(p, pp, r, s, L, b).shift(fb_prefactor(s, b, c, r, L))
        parts.append(("paths", equal_to_order(lhs, rhs, INF)))
        return parts

    return timed_report("oracle-paths", {"p": p, "pp": pp, "s": s, "b": b, "c": c, "L": L}, INF, run)


def check_hooks(p, pp, r, s, b, L) -> IdentityReport:
    """Enumerated hook-difference partitions against the configuration sum."""
    try:
        lhs = hook_partition_gen_fn(p, pp, r, s, b, L)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc

    def run():
        return equal_to_order(lhs, X(p, pp, r, s, L, b), INF)

    return timed_report("oracle-hooks", {"p": p, "pp": pp, "r": r, "s": s, "b": b, "L": L}, INF, run)


def check_path_grid(p, pp, Lmax: int = 14) -> IdentityReport:
    """Every (s, b, c, L) with c a neighbour of b in 0..p' and L <= Lmax of matching parity."""

    def run():
        parts = []
        for s_ in range(1, pp):
            for b in range(1, pp):
                for c in (b - 1, b + 1):
                    if not 0 <= c <= pp:
                        continue
                    for L in range(abs(s_ - b), Lmax + 1, 2):
                        rep = check_paths(p, pp, s_, b, c, L)
                        parts.append((f"s={s_} b={b} c={c} L={L}",
                                      Comparison(rep.ok, INF, rep.mismatch)))
        return parts

    return timed_report("oracle-path-grid", {"p": p, "pp": pp, "Lmax": Lmax}, INF, run)


def check_hook_grid(p, pp, Lmax: int = 12) -> IdentityReport:
    """Every admissible (r, s, b, L) of the hook-difference oracle with L <= Lmax."""

    def run():
        parts = []
        for r in range(0, p + 1):
            for s_ in range(1, pp):
                for b in range(max(1, r), min(pp - 1, r + pp - p) + 1):
                    for L in range(abs(s_ - b), Lmax + 1, 2):
                        rep = check_hooks(p, pp, r, s_, b, L)
                        parts.append((f"r={r} s={s_} b={b} L={L}", Comparison(rep.ok, INF, rep.mismatch)))
        return parts

    return timed_report("oracle-hook-grid", {"p": p, "pp": pp, "Lmax": Lmax}, INF, run)


def check_partitions(modulus: int, residues: tuple, order: int = 40, distinct: bool = False) -> IdentityReport:
    """Counted partitions with parts in given residue classes against the product expansion."""
    order = int(order)

    def run():
        counted = partition_count_products(PartSpec(modulus, tuple(residues), distinct), order)
        prod = QSeries.one(order)
        for res in residues:
            x = mono(res if res else modulus)
            if distinct:
                prod = prod * poch(x.times(MonomialArg(-1, Fraction(0))), INF, order, modulus)
            else:
                prod = prod * poch_reciprocal(x, INF, order, modulus)
            prod = prod.truncate(order)
        return equal_to_order(counted, prod, order)

    return timed_report("oracle-partitions", {"modulus": modulus, "residues": list(residues),
                                              "distinct": distinct}, order, run)


# ----------------------------------------------------------------------
# Conjugate pair checks for the registry


def _named_bailey_pair(name: str, eta: int = 0) -> bl.BaileyPair:
    table = {"initial": bl.initial_pair, "rogers": bl.rogers_pair, "rogers-q": bl.rogers_pair_shifted}
    if name == "unit":
        return bl.unit_pair(eta)
    if name not in table:
        raise PreconditionError(f"unknown Bailey pair {name!r}")
    return table[name]()


def _rho_pair(params):
    return (parse_monomial(params.get("rho1", "inf")), parse_monomial(params.get("rho2", "inf")))


def check_higher_level_vs_cor42(N, sigma, eta, l, Lmax=4, order=25) -> IdentityReport:
    """Each level-N sector equals the corresponding configuration-sum pair up to a q-power."""
    order = _order_value(order)

    def run():
        h = bl.cbp_higher_level(N, sigma, eta, l)
        ls = l if sigma == 0 else N - l
        c = bl.cbp_corollary42(1, N + 2, eta, ls)
        f = Fraction(eta * eta - ls * ls, 4 * N)
        parts = []
        for L in range(Lmax + 1):
            for comp in ("gamma", "delta"):
                a = getattr(c, comp)(L, order)
                b = getattr(h, comp)(L, order - f).shift(f)
                parts.append((f"{comp} L={L}", equal_to_order(a, b, order)))
        return parts

    return timed_report("cbp-higher-vs-cor42", {"N": N, "sigma": sigma, "eta": eta, "l": l}, order, run)


def check_special_pairs(p, pp, eta, l, Lmax=5, order=30) -> IdentityReport:
    """The (1,3) and (2,3) configuration-sum pairs against the classical closed forms."""
    order = _order_value(order)
    if (p, pp) == (1, 3):
        other, f = bl.gdinf_pair(eta), Fraction(eta * eta - l * l, 4)
    elif (p, pp) == (2, 3):
        other, f = bl.bs_pair(eta, 1), Fraction(eta - l, 2)
    else:
        raise PreconditionError("only (1,3) and (2,3) have classical counterparts")

    def run():
        c = bl.cbp_corollary42(p, pp, eta, l)
        parts = []
        for L in range(Lmax + 1):
            for comp in ("gamma", "delta"):
                a = getattr(c, comp)(L, order)
                b = getattr(other, comp)(L, order - f).shift(f).truncate(order)
                parts.append((f"{comp} L={L}", equal_to_order(a, b, order)))
        return parts

    return timed_report("cbp-special", {"p": p, "pp": pp, "eta": eta, "l": l}, order, run)


def check_duality_swap(p1, pp1, p2, pp2, s, l, Lmax=6, order=30) -> IdentityReport:
    """beta_L delta_L is unchanged when (beta, delta) is exchanged for (beta-bar, delta-bar)."""
    order = _order_value(order)
    eta = s - 1

    def run():
        beta = bl.SeriesSequence(lambda L, o: _times(X(p1, pp1, 0, s, 2 * L + eta, 1),
                                                     lambda oo: qfac_inv(2 * L + eta, oo), o), "beta")
        delta = bl.SeriesSequence(lambda L, o: X(p2, pp2, 0, l + 1, 2 * L + eta, 1), "delta")
        bbar, dbar = bl.duality_swap(beta, delta, eta)
        parts = []
        for L in range(Lmax + 1):
            a = (beta(L, order) * delta(L, INF)).truncate(order)
            b = (bbar(L, order) * dbar(L, order)).truncate(order)
            parts.append((f"summand L={L}", equal_to_order(a, b, order)))
            parts.append((f"delta-bar L={L}", equal_to_order(dbar(L, order), X(p1, pp1, 0, s, 2 * L + eta, 1), order)))
        return parts

    return timed_report("duality-swap", {"p1": p1, "pp1": pp1, "p2": p2, "pp2": pp2, "s": s, "l": l},
                        order, run)


# ----------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class Check:
    run: Callable[[dict, object], IdentityReport]
    description: str
    default_order: object = 30


def _p(params, key, default=None):
    if key in params:
        return params[key]
    if default is None:
        raise PreconditionError(f"missing parameter {key!r}")
    return default


REGISTRY: dict[str, Check] = {
    "rr": Check(lambda P, o: check_rr(o),
                "Rogers-Ramanujan identities via the Bailey lemma, the triple product and directly", 200),
    "iter2-regression": Check(lambda P, o: check_iter2_regression(int(_p(P, "Lmax", 50)), o),
                              "infinite-parameter transform of the initial pair gives the Rogers pair", 200),
    "bailey-pair": Check(lambda P, o: bl.verify_bailey_pair(
        _named_bailey_pair(_p(P, "pair"), int(P.get("eta", 0))), int(_p(P, "Lmax", 6)), o),
        "defining relation of a named Bailey pair (initial, rogers, rogers-q, unit)"),
    "transform": Check(lambda P, o: bl.verify_bailey_pair(bl.bailey_transform(
        _named_bailey_pair(_p(P, "pair"), int(P.get("eta", 0))), _rho_pair(P)), int(_p(P, "Lmax", 5)), o),
        "transformed Bailey pair with monomial or infinite rho parameters is again a Bailey pair", 25),
    "gdinf": Check(lambda P, o: bl.verify_conjugate_pair(bl.gdinf_pair(int(P.get("eta", 0))),
                                                         int(_p(P, "Lmax", 6)), o),
                   "conjugate pair a^L q^{L^2} and its (aq)_inf quotient"),
    "gd": Check(lambda P, o: bl.verify_conjugate_pair(bl.gd_pair(
        int(_p(P, "eta")), *_rho_pair(P), int(P["M"]) if "M" in P and P["M"] != "inf" else INF),
        int(_p(P, "Lmax", 6)), o), "q-Saalschutz conjugate pair with monomial rho parameters"),
    "bs": Check(lambda P, o: bl.verify_conjugate_pair(bl.bs_pair(int(P.get("eta", 0)), int(_p(P, "k"))),
                                                      int(_p(P, "Lmax", 6)), o),
                "conjugate pair with delta_L = q^{kL}"),
    "cbp-thm41": Check(lambda P, o: bl.verify_conjugate_pair(bl.cbp_theorem41(int(_p(P, "eta")), int(_p(P, "j"))),
                                                             int(_p(P, "Lmax", 6)), o),
                       "theta-type conjugate pair against a Gaussian-polynomial difference", 35),
    "cbp-cor42": Check(lambda P, o: bl.verify_conjugate_pair(bl.cbp_corollary42(
        int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "eta")), int(_p(P, "l"))), int(_p(P, "Lmax", 5)), o),
        "string functions against configuration sums as a conjugate pair"),
    "cbp-special": Check(lambda P, o: check_special_pairs(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "eta")),
                                                          int(_p(P, "l")), int(_p(P, "Lmax", 5)), o),
                         "(1,3) and (2,3) configuration-sum pairs equal the classical pairs up to q-powers"),
    "cbp-higher-level": Check(lambda P, o: bl.verify_conjugate_pair(bl.cbp_higher_level(
        int(_p(P, "N")), int(_p(P, "sigma")), int(_p(P, "eta")), int(_p(P, "l"))), int(_p(P, "Lmax", 4)), o),
        "A_{N-1} lattice-sum conjugate pairs", 25),
    "cbp-higher-vs-cor42": Check(lambda P, o: check_higher_level_vs_cor42(
        int(_p(P, "N")), int(_p(P, "sigma")), int(_p(P, "eta")), int(_p(P, "l")), int(_p(P, "Lmax", 4)), o),
        "lattice-sum pairs agree with the configuration-sum pairs at (1, N+2)", 25),
    "bailey-sum": Check(lambda P, o: bl.bailey_sum(
        _named_bailey_pair(_p(P, "pair"), int(P.get("eta", 0))),
        bl.gdinf_pair(int(P.get("eta", 0))) if P.get("conjugate", "gdinf") == "gdinf" else
        bl.cbp_corollary42(int(_p(P, "p")), int(_p(P, "pp")), int(P.get("eta", 0)), int(_p(P, "l"))), o),
        "pairing a Bailey pair with a conjugate pair (gdinf or configuration-sum pair)"),
    "lemma43": Check(lambda P, o: check_lemma43(int(_p(P, "alpha")), int(_p(P, "beta")), o),
                     "two-parameter lemma at monomial arguments", 35),
    "classical": Check(lambda P, o: check_classical(_p(P, "identity"), P, o),
                       "q-Chu-Vandermonde, Heine, q-Kummer-Thomae-Whipple, q-binomial theorem, 1/(x)_inf"),
    "euler-generalized": Check(lambda P, o: check_euler_generalized(
        int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "l")), int(_p(P, "eta")), o),
        "alternating sum of string functions is a Kronecker delta", 40),
    "lemma-tech": Check(lambda P, o: check_lemma_tech(
        int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "l")), int(_p(P, "eta")), o),
        "one-sided to two-sided rearrangement of symmetric sequences", 40),
    "level-half": Check(lambda P, o: check_level_half_props(int(_p(P, "m")), o, int(P.get("Lmax", 12))),
                        "level 1/2 string functions and the (2,5) polynomial identities"),
    "ising": Check(lambda P, o: check_ising_props(int(_p(P, "m")), o, int(P.get("Lmax", 12))),
                   "(3,4) polynomial identities and level -2/3 string functions"),
    "corcf": Check(lambda P, o: check_corCF(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "m")),
                                            int(_p(P, "sigma")), P.get("which", "CF"), o),
                   "fermionic r-sums for string functions", 25),
    "string-forms": Check(lambda P, o: check_string_forms(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "m")),
                                                          int(_p(P, "l")), o),
                          "agreement of the independent string-function formulas", 25),
    "bose-fermi": Check(lambda P, o: check_bose_fermi(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "Lmax", 20))),
                        "fermionic configuration sums equal the bosonic ones", INF),
    "bfid": Check(lambda P, o: check_bfid(int(_p(P, "p1")), int(_p(P, "pp1")), int(_p(P, "p2")), int(_p(P, "pp2")),
                                          int(_p(P, "b")), int(_p(P, "s")), int(_p(P, "l")), o,
                                          bool(P.get("fermionic", False))),
                  "string-function sums against products of configuration sums, with branching reductions", 25),
    "duality-swap": Check(lambda P, o: check_duality_swap(int(_p(P, "p1")), int(_p(P, "pp1")), int(_p(P, "p2")),
                                                          int(_p(P, "pp2")), int(_p(P, "s")), int(_p(P, "l")),
                                                          int(P.get("Lmax", 6)), o),
                          "exchanging Bailey and conjugate sequences leaves every summand unchanged"),
    "rrppp": Check(lambda P, o: check_rrppp(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "l")), int(_p(P, "delta")),
                                            int(_p(P, "k")), int(_p(P, "i")), o),
                   "Andrews-Gordon and Bressoud type identities with string functions", 35),
    "oracle-paths": Check(lambda P, o: check_paths(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "s")), int(_p(P, "b")),
                                                   int(_p(P, "c")), int(_p(P, "L"))),
                          "enumerated lattice paths against the prefactored configuration sum", INF),
    "oracle-hooks": Check(lambda P, o: check_hooks(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "r")), int(_p(P, "s")),
                                                   int(_p(P, "b")), int(_p(P, "L"))),
                          "enumerated hook-difference partitions against the configuration sum", INF),
    "oracle-path-grid": Check(lambda P, o: check_path_grid(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "Lmax", 14))),
                              "lattice-path oracle over every boundary choice of a model", INF),
    "oracle-hook-grid": Check(lambda P, o: check_hook_grid(int(_p(P, "p")), int(_p(P, "pp")), int(_p(P, "Lmax", 12))),
                              "hook-difference oracle over every admissible index of a model", INF),
    "oracle-partitions": Check(lambda P, o: check_partitions(int(_p(P, "modulus")), tuple(_p(P, "residues")),
                                                             int(o), bool(P.get("distinct", False))),
                               "counted restricted partitions against the product expansion", 40),
}


def run_check(identity: str, params: dict | None = None, order=None) -> IdentityReport:
    if identity not in REGISTRY:
        raise PreconditionError(f"unknown identity {identity!r}; see the list command")
    check = REGISTRY[identity]
    order = check.default_order if order is None else order
    return check.run(dict(params or {}), _order_value(order))


def _run_entry(job):
    identity, params, order = job
    if order is None and identity in REGISTRY:
        order = REGISTRY[identity].default_order
    try:
        return run_check(identity, params, order)
    except PreconditionError as exc:
        return IdentityReport(identity, dict(params), order, "precondition", detail=str(exc))


def run_entries(jobs, parallel: int = 1) -> list[IdentityReport]:
    """Run (identity, params, order) jobs; results keep the job order."""
    jobs = list(jobs)
    if parallel <= 1 or len(jobs) <= 1:
        return [_run_entry(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_run_entry, jobs))


def parse_order(text):
    if text is None:
        return None
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    t = str(text).strip()
    if t in ("inf", "exact"):
        return INF
    value = Fraction(t)
    if value <= 0:
        raise PreconditionError("order must be positive")
    return value


def load_manifest(name_or_path) -> list[tuple[str, dict, object]]:
    """Expand a manifest into (identity, params, order) jobs."""
    path = Path(str(name_or_path))
    if path.exists():
        doc = json.loads(path.read_text())
    else:
        ref = resources.files("qbailey") / "data" / f"{name_or_path}.json"
        if not ref.is_file():
            raise PreconditionError(f"no manifest named {name_or_path!r}")
        doc = json.loads(ref.read_text())
    jobs = []
    for entry in doc["entries"]:
        identity = entry["identity"]
        order = parse_order(entry.get("order"))
        for params in entry.get("params", [{}]):
            jobs.append((identity, params, order))
    return jobs
