"""One-dimensional configuration sums X^{(p,p')}_{r,s}(L,b) and their symmetries."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qtools import qbinomial
from .series import INF, QSeries, _order_value, equal_to_order
from .report import IdentityReport, timed_report


class PreconditionError(ValueError):
    """Parameters outside the domain of an operation."""


@dataclass(frozen=True)
class ModelParams:
    p: int
    pp: int

    def __post_init__(self):
        if not (1 <= self.p < self.pp):
            raise PreconditionError(f"need 1 <= p < p', got ({self.p}, {self.pp})")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.p, self.pp) == 1

    @property
    def level(self) -> Fraction:
        return Fraction(self.pp, self.p) - 2

    def dual(self) -> "ModelParams":
        return ModelParams(self.pp - self.p, self.pp)


@dataclass(frozen=True)
class XIndex:
    r: int
    s: int
    b: int
    L: int


def check_index(m: ModelParams, ix: XIndex) -> None:
    if not 0 <= ix.r <= m.p:
        raise PreconditionError(f"r={ix.r} outside 0..{m.p}")
    if not 1 <= ix.s <= m.pp - 1:
        raise PreconditionError(f"s={ix.s} outside 1..{m.pp - 1}")
    if not 1 <= ix.b <= m.pp - 1:
        raise PreconditionError(f"b={ix.b} outside 1..{m.pp - 1}")
    if ix.L < 0:
        raise PreconditionError("L must be nonnegative")
    if (ix.L + ix.s + ix.b) % 2:
        raise PreconditionError("L+s+b even is required")


@lru_cache(maxsize=100000)
def _config_sum(p: int, pp: int, r: int, s: int, b: int, L: int, order) -> QSeries:
    total = QSeries.zero(order)
    # [L, k - pp*j] vanishes unless 0 <= k - pp*j <= L
    k1 = (L + s - b) // 2
    k2 = (L - s - b) // 2
    for k, first in ((k1, True), (k2, False)):
        jlo = math.ceil((k - L) / pp)
        jhi = math.floor(k / pp)
        for j in range(jlo, jhi + 1):
            if first:
                e = j * (p * pp * j + pp * r - p * s)
            else:
                e = (p * j + r) * (pp * j + s)
            if order != INF and e >= order:
                continue
            rel = order if order == INF else order - e
            term = qbinomial(L, k - pp * j, rel).shift(e)
            total = total + term if first else total - term
    return total


def config_sum(m: ModelParams, ix: XIndex, order=INF) -> QSeries:
    """X^{(p,p')}_{r,s}(L,b) as an exact polynomial (or truncated at `order`)."""
    check_index(m, ix)
    return _config_sum(m.p, m.pp, ix.r, ix.s, ix.b, ix.L, _order_value(order))


def X(p: int, pp: int, r: int, s: int, L: int, b: int, order=INF) -> QSeries:
    """Shorthand for config_sum with the argument order of the formulas."""
    return config_sum(ModelParams(p, pp), XIndex(r, s, b, L), order)


def flip_symmetry_check(m: ModelParams, ix: XIndex, order=INF) -> IdentityReport:
    """X_{r,s}(L,b) against X_{p-r,p'-s}(L,p'-b)."""
    params = {"p": m.p, "pp": m.pp, "r": ix.r, "s": ix.s, "b": ix.b, "L": ix.L}

    def run():
        lhs = config_sum(m, ix, order)
        rhs = config_sum(m, XIndex(m.p - ix.r, m.pp - ix.s, m.pp - ix.b, ix.L), order)
        return equal_to_order(lhs, rhs, order if order != INF else INF)

    return timed_report("flip-symmetry", params, order, run)


def dual_symmetry_check(m: ModelParams, ix: XIndex) -> IdentityReport:
    """X_{r,s}^{(p,p')}(L,b;q) against q^{(L^2-(b-s)^2)/4} X^{(p'-p,p')}_{b-r,s}(L,b;1/q)."""
    params = {"p": m.p, "pp": m.pp, "r": ix.r, "s": ix.s, "b": ix.b, "L": ix.L}

    def run():
        lhs = config_sum(m, ix).rescale(4)
        dual = config_sum(m.dual(), XIndex(ix.b - ix.r, ix.s, ix.b, ix.L))
        rhs = dual.reciprocal_q().shift(Fraction(ix.L ** 2 - (ix.b - ix.s) ** 2, 4)).rescale(4)
        return equal_to_order(lhs, rhs, INF)

    return timed_report("dual-symmetry", params, INF, run)


def rzero_check(m: ModelParams, s: int, L: int) -> IdentityReport:
    """X_{0,s}(L,1) against q^{(L-s+1)/2} X_{1,s}(L,1)."""
    params = {"p": m.p, "pp": m.pp, "s": s, "L": L}

    def run():
        lhs = config_sum(m, XIndex(0, s, 1, L))
        rhs = config_sum(m, XIndex(1, s, 1, L)).shift(Fraction(L - s + 1, 2))
        return equal_to_order(lhs, rhs, INF)

    return timed_report("rzero", params, INF, run)
