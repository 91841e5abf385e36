"""Truncated formal power series in q with exact integer coefficients.

Exponents live on a grid k/denom.  A series knows its order O: every
coefficient at an exponent below O is exact, everything at or above O is
unknown.  Exact polynomials carry order +inf.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from ._backend import inv_trunc, mul_trunc

INF = math.inf

Rational = Union[int, Fraction]


class GridError(ValueError):
    """An exponent does not lie on the requested grid."""


class NonUnitError(ArithmeticError):
    """Inversion of a series whose leading coefficient is not +1 or -1."""


class OrderError(ValueError):
    """A requested order exceeds the order at which a series is reliable."""


class BudgetExceeded(RuntimeError):
    """An infinite sum did not settle within its shell budget."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"not an exact rational: {x!r}")


def _order_value(order):
    if order is None or order == INF:
        return INF
    return as_rational(order)


def _top_index(order, denom: int):
    """Exclusive bound on grid indices that are exact below `order`."""
    if order == INF:
        return None
    return math.ceil(order * denom)


def _min_top(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class QSeries:
    """Immutable truncated series sum c_k q^(k/denom) for grid indices k < top."""

    __slots__ = ("denom", "lo", "coeffs", "top")

    def __init__(self, terms=None, order=INF, denom: int = 4):
        """Build from a mapping {exponent: coefficient}."""
        if denom < 1:
            raise GridError("grid denominator must be positive")
        order = _order_value(order)
        top = _top_index(order, denom)
        idx = {}
        for e, c in (terms or {}).items():
            k = as_rational(e) * denom
            if k.denominator != 1:
                raise GridError(f"exponent {e} is not on the 1/{denom} grid")
            if c:
                idx[int(k)] = idx.get(int(k), 0) + c
        if idx:
            lo = min(idx)
            hi = max(idx)
            coeffs = [0] * (hi - lo + 1)
            for k, c in idx.items():
                coeffs[k - lo] = c
        else:
            lo, coeffs = 0, []
        self._set(denom, lo, coeffs, top)

    # -- construction helpers -------------------------------------------
    def _set(self, denom, lo, coeffs, top):
        if top is not None and coeffs and lo + len(coeffs) > top:
            coeffs = coeffs[: max(0, top - lo)]
        # strip zeros at both ends
        i = 0
        n = len(coeffs)
        while i < n and not coeffs[i]:
            i += 1
        j = n
        while j > i and not coeffs[j - 1]:
            j -= 1
        if i or j != n:
            coeffs = coeffs[i:j]
            lo += i
        if not coeffs:
            lo = 0
        self.denom = denom
        self.lo = lo
        self.coeffs = coeffs
        self.top = top

    @classmethod
    def _raw(cls, denom: int, lo: int, coeffs: list, top) -> "QSeries":
        obj = cls.__new__(cls)
        obj._set(denom, lo, coeffs, top)
        return obj

    @classmethod
    def zero(cls, order=INF, denom: int = 1) -> "QSeries":
        return cls._raw(denom, 0, [], _top_index(_order_value(order), denom))

    @classmethod
    def one(cls, order=INF, denom: int = 1) -> "QSeries":
        return cls._raw(denom, 0, [1], _top_index(_order_value(order), denom))

    @classmethod
    def monomial(cls, c: int, e: Rational = 0, order=INF, denom: int | None = None) -> "QSeries":
        e = as_rational(e)
        if denom is None:
            denom = e.denominator
        k = e * denom
        if k.denominator != 1:
            raise GridError(f"exponent {e} is not on the 1/{denom} grid")
        return cls._raw(denom, int(k), [c], _top_index(_order_value(order), denom))

    @classmethod
    def from_dense(cls, coeffs: Sequence[int], start: Rational = 0, order=INF, denom: int = 1) -> "QSeries":
        k = as_rational(start) * denom
        if k.denominator != 1:
            raise GridError("start exponent off grid")
        return cls._raw(denom, int(k), list(coeffs), _top_index(_order_value(order), denom))

    # -- basic properties ------------------------------------------------
    @property
    def order(self):
        return INF if self.top is None else Fraction(self.top, self.denom)

    @property
    def is_exact(self) -> bool:
        return self.top is None

    @property
    def valuation(self):
        """Least exponent with a nonzero coefficient, +inf for the zero series."""
        if not self.coeffs:
            return INF
        return Fraction(self.lo, self.denom)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _veff(self):
        """Valuation index used for order propagation (order for a zero series)."""
        if self.coeffs:
            return self.lo
        return self.top

    def coeff(self, e: Rational) -> int:
        k = as_rational(e) * self.denom
        if self.top is not None and k >= self.top:
            raise OrderError(f"coefficient at {e} is beyond the order {self.order}")
        if k.denominator != 1:
            return 0
        k = int(k) - self.lo
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def items(self) -> list[tuple[Fraction, int]]:
        """(exponent, coefficient) pairs with nonzero coefficient, increasing."""
        d = self.denom
        return [(Fraction(self.lo + i, d), c) for i, c in enumerate(self.coeffs) if c]

    def to_dict(self) -> dict[Fraction, int]:
        return dict(self.items())

    def degree(self):
        if not self.coeffs:
            return -INF
        return Fraction(self.lo + len(self.coeffs) - 1, self.denom)

    def at_zero(self) -> int:
        """Value at q = 0; requires no negative exponents."""
        if self.coeffs and self.lo < 0:
            raise ValueError("series has negative exponents")
        if self.top is not None and self.top <= 0:
            raise OrderError("constant term is beyond the order")
        return self.coeff(0)

    # -- grid handling ---------------------------------------------------
    def rescale(self, denom: int) -> "QSeries":
        """Same series on a finer grid (denom must be a multiple of the current one)."""
        if denom == self.denom:
            return self
        f, r = divmod(denom, self.denom)
        if r:
            raise GridError(f"cannot move from grid 1/{self.denom} to 1/{denom}")
        coeffs = [0] * ((len(self.coeffs) - 1) * f + 1) if self.coeffs else []
        coeffs[::f] = self.coeffs
        top = None if self.top is None else self.top * f
        return QSeries._raw(denom, self.lo * f, coeffs, top)

    def reduced(self) -> "QSeries":
        """Same series on the coarsest grid that holds every exponent and the order."""
        g = self.denom
        if self.coeffs:
            g = math.gcd(g, self.lo)
            for i, c in enumerate(self.coeffs):
                if c:
                    g = math.gcd(g, i)
                if g == 1:
                    break
        if self.top is not None:
            g = math.gcd(g, self.top)
        if g == 1:
            return self
        d = self.denom // g
        top = None if self.top is None else self.top // g
        return QSeries._raw(d, self.lo // g, self.coeffs[::g], top)

    @staticmethod
    def _align(x: "QSeries", y: "QSeries"):
        if x.denom == y.denom:
            return x, y
        d = math.lcm(x.denom, y.denom)
        return x.rescale(d), y.rescale(d)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other, like: "QSeries"):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return QSeries._raw(like.denom, 0, [other], None)
        return NotImplemented

    def _addsub(self, other: "QSeries", sign: int) -> "QSeries":
        x, y = QSeries._align(self, other)
        top = _min_top(x.top, y.top)
        if not y.coeffs:
            return QSeries._raw(x.denom, x.lo, x.coeffs, top)
        if not x.coeffs:
            ys = y.coeffs if sign > 0 else [-c for c in y.coeffs]
            return QSeries._raw(x.denom, y.lo, ys, top)
        lo = min(x.lo, y.lo)
        hi = max(x.lo + len(x.coeffs), y.lo + len(y.coeffs))
        if top is not None:
            hi = min(hi, top)
        if hi <= lo:
            return QSeries._raw(x.denom, 0, [], top)
        out = [0] * (hi - lo)
        off = x.lo - lo
        for i, c in enumerate(x.coeffs):
            if off + i >= len(out):
                break
            out[off + i] = c
        off = y.lo - lo
        n = len(out)
        if sign > 0:
            for i, c in enumerate(y.coeffs):
                if off + i >= n:
                    break
                out[off + i] += c
        else:
            for i, c in enumerate(y.coeffs):
                if off + i >= n:
                    break
                out[off + i] -= c
        return QSeries._raw(x.denom, lo, out, top)

    def __add__(self, other):
        other = QSeries._coerce(other, self)
        if other is NotImplemented:
            return other
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = QSeries._coerce(other, self)
        if other is NotImplemented:
            return other
        return self._addsub(other, -1)

    def __rsub__(self, other):
        other = QSeries._coerce(other, self)
        if other is NotImplemented:
            return other
        return other._addsub(self, -1)

    def __neg__(self):
        return QSeries._raw(self.denom, self.lo, [-c for c in self.coeffs], self.top)

    def __pos__(self):
        return self

    def scale(self, c: int) -> "QSeries":
        if c == 0:
            return QSeries._raw(self.denom, 0, [], self.top)
        if c == 1:
            return self
        return QSeries._raw(self.denom, self.lo, [c * v for v in self.coeffs], self.top)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        x, y = QSeries._align(self, other)
        vx, vy = x._veff(), y._veff()
        if x.top is None and y.top is None:
            top = None
        elif x.top is None:
            top = None if vx is None else y.top + vx
        elif y.top is None:
            top = None if vy is None else x.top + vy
        else:
            top = min(x.top + vy, y.top + vx)
        if not x.coeffs or not y.coeffs:
            return QSeries._raw(x.denom, 0, [], top)
        lo = x.lo + y.lo
        n = len(x.coeffs) + len(y.coeffs) - 1
        if top is not None:
            n = min(n, top - lo)
        return QSeries._raw(x.denom, lo, mul_trunc(x.coeffs, y.coeffs, n), top)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries._raw(self.denom, 0, [1], None)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, e: Rational) -> "QSeries":
        """Multiply by q^e."""
        e = as_rational(e)
        x = self
        k = e * x.denom
        if k.denominator != 1:
            x = x.rescale(math.lcm(x.denom, e.denominator))
            k = e * x.denom
        k = int(k)
        top = None if x.top is None else x.top + k
        return QSeries._raw(x.denom, x.lo + k, x.coeffs, top)

    def truncate(self, order) -> "QSeries":
        """Forget everything at exponents >= order."""
        order = _order_value(order)
        if order == INF:
            return self
        x = self
        k = order * x.denom
        if k.denominator != 1:
            x = x.rescale(math.lcm(x.denom, order.denominator))
        top = _min_top(x.top, _top_index(order, x.denom))
        return QSeries._raw(x.denom, x.lo, x.coeffs, top)

    def with_order(self, order) -> "QSeries":
        """Truncate at `order`, which must not exceed the current order."""
        order = _order_value(order)
        if order > self.order:
            raise OrderError(f"requested order {order} exceeds reliable order {self.order}")
        return self.truncate(order)

    def invert(self, order=None) -> "QSeries":
        """Multiplicative inverse; the leading coefficient must be +1 or -1."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of the zero series")
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise NonUnitError(f"leading coefficient {a0} is not a unit")
        x = self
        if order is not None and order != INF:
            o = as_rational(order)
            if (o * x.denom).denominator != 1:
                x = x.rescale(math.lcm(x.denom, o.denominator))
        top = None if x.top is None else x.top - 2 * x.lo
        if order is not None and order != INF:
            top = _min_top(top, _top_index(as_rational(order), x.denom))
        if top is None:
            if len(x.coeffs) == 1:
                return QSeries._raw(x.denom, -x.lo, [a0], None)
            raise OrderError("inverse of a non-monomial polynomial needs an order")
        lo = -x.lo
        n = top - lo
        if n <= 0:
            return QSeries._raw(x.denom, 0, [], top)
        return QSeries._raw(x.denom, lo, inv_trunc(x.coeffs, n), top)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.div_exact(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.top is None and self.top is None:
            q = self.poly_divide(other)
            if q is not None:
                return q
            raise OrderError("division of polynomials that is not exact needs an order")
        order = None
        if other.top is None:
            order = self.order - other.valuation
        return self * other.invert(order)

    def div_exact(self, k: int) -> "QSeries":
        """Divide every coefficient by the integer k; fails unless exact."""
        out = []
        for c in self.coeffs:
            qq, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
            out.append(qq)
        return QSeries._raw(self.denom, self.lo, out, self.top)

    def poly_divide(self, other: "QSeries"):
        """Exact quotient of two exact polynomials, or None if not divisible."""
        x, y = QSeries._align(self, other)
        if not y.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if not x.coeffs:
            return QSeries._raw(x.denom, 0, [], None)
        b0 = y.coeffs[0]
        rem = list(x.coeffs)
        nq = len(rem) - len(y.coeffs) + 1
        if nq <= 0:
            return None
        q = [0] * nq
        yc = y.coeffs
        for i in range(nq):
            c = rem[i]
            if c:
                t, r = divmod(c, b0)
                if r:
                    return None
                q[i] = t
                for j, b in enumerate(yc):
                    rem[i + j] -= t * b
        if any(rem[nq:]):
            return None
        return QSeries._raw(x.denom, x.lo - y.lo, q, None)

    def times_binomial(self, c: int, e: Rational) -> "QSeries":
        """Multiply by (1 + c q^e)."""
        return self + self.shift(e).scale(c)

    def div_binomial(self, c: int, e: Rational) -> "QSeries":
        """Divide by (1 + c q^e) for e > 0, as a power series in q^e."""
        e = as_rational(e)
        if e <= 0:
            raise ValueError("div_binomial needs a positive exponent")
        x = self
        k = e * x.denom
        if k.denominator != 1:
            x = x.rescale(math.lcm(x.denom, e.denominator))
            k = e * x.denom
        k = int(k)
        if x.top is None:
            q = x.poly_divide(QSeries._raw(x.denom, 0, [1] + [0] * (k - 1) + [c], None))
            if q is None:
                raise OrderError("division is not exact; truncate first")
            return q
        n = x.top - x.lo
        if n <= 0 or not x.coeffs:
            return QSeries._raw(x.denom, 0, [], x.top)
        out = list(x.coeffs) + [0] * (n - len(x.coeffs))
        for i in range(k, n):
            out[i] -= c * out[i - k]
        return QSeries._raw(x.denom, x.lo, out, x.top)

    def subs_power(self, k: int) -> "QSeries":
        """Substitute q -> q^k for a positive integer k."""
        if k < 1:
            raise ValueError("power must be positive")
        if k == 1:
            return self
        coeffs = [0] * ((len(self.coeffs) - 1) * k + 1) if self.coeffs else []
        coeffs[::k] = self.coeffs
        top = None if self.top is None else self.top * k
        return QSeries._raw(self.denom, self.lo * k, coeffs, top)

    def reciprocal_q(self) -> "QSeries":
        """Substitute q -> 1/q in an exact polynomial."""
        if self.top is not None:
            raise OrderError("q -> 1/q is only defined for exact polynomials")
        if not self.coeffs:
            return self
        hi = self.lo + len(self.coeffs) - 1
        return QSeries._raw(self.denom, -hi, self.coeffs[::-1], None)

    # -- comparison and display -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = QSeries._raw(self.denom, 0, [other], self.top)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        x, y = QSeries._align(a, b)
        return x.top == y.top and x.lo == y.lo and x.coeffs == y.coeffs

    __hash__ = None

    def __repr__(self):
        parts = []
        for e, c in self.items()[:12]:
            parts.append(f"{c}*q^{e}")
        if len(self.items()) > 12:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.top is None else f" + O(q^{self.order})"
        return f"QSeries({body}{tail})"


def make_monomial(c: int, e: Rational, order, denom: int = 4) -> QSeries:
    """The series c*q^e truncated at `order` on the 1/denom grid."""
    e = as_rational(e)
    if (e * denom).denominator != 1:
        raise GridError(f"exponent {e} is not on the 1/{denom} grid")
    return QSeries.monomial(c, e, order, denom)


def q(order=INF, denom: int = 1) -> QSeries:
    """The series q itself."""
    return QSeries.monomial(1, 1, order, denom)


# ----------------------------------------------------------------------
# Comparison to a given order


@dataclass(frozen=True)
class Mismatch:
    exponent: Fraction
    lhs: int
    rhs: int


@dataclass(frozen=True)
class Comparison:
    ok: bool
    order: object
    mismatch: Mismatch | None = None

    def __bool__(self):
        return self.ok


def equal_to_order(x: QSeries, y: QSeries, order=None) -> Comparison:
    """Compare two series at every grid exponent below `order`."""
    if order is None:
        order = min(x.order, y.order)
    order = _order_value(order)
    if order > x.order or order > y.order:
        raise OrderError(f"order {order} exceeds the reliable order of an operand")
    a, b = QSeries._align(x, y)
    diff = (a - b)
    if order != INF:
        diff = diff.truncate(order)
    if not diff.coeffs:
        return Comparison(True, order)
    e = Fraction(diff.lo, diff.denom)
    return Comparison(False, order, Mismatch(e, a.coeff(e), b.coeff(e)))


# ----------------------------------------------------------------------
# Convergent sums over index shells

_RADIUS_MAPS = {
    "N": lambda r: (r,),
    "P": lambda r: (r + 1,),
    "M": lambda r: (-1 - r,),
    "NP": lambda r: (-r,),
    "Z": lambda r: (0,) if r == 0 else (r, -r),
}


def default_window() -> int:
    return int(os.environ.get("QBAILEY_WINDOW", "3"))


def default_budget() -> int:
    return int(os.environ.get("QBAILEY_BUDGET", "4000"))


def shell(domain, r: int) -> Iterator:
    """Indices of radius exactly r in a product of one-dimensional domains."""
    if isinstance(domain, str):
        yield from _RADIUS_MAPS[domain](r)
        return
    maps = [_RADIUS_MAPS[d] for d in domain]
    dim = len(maps)
    for radii in itertools.product(range(r + 1), repeat=dim):
        if max(radii) != r:
            continue
        for point in itertools.product(*(m(k) for m, k in zip(maps, radii))):
            yield point


Term = Union[QSeries, tuple, None]


def sum_converging(term: Callable[..., Term], order, *, domain="N", window: int | None = None,
                   budget: int | None = None, min_shells: int = 0, denom: int = 1) -> QSeries:
    """Sum term(index) over a domain, shell by shell, to the given order.

    A term is a QSeries, a monomial (coefficient, exponent), or None for
    zero.  Summation stops once `window` consecutive shells (counted after
    the first `min_shells`) contribute nothing below `order`.
    """
    order = _order_value(order)
    if order == INF:
        raise OrderError("an infinite sum needs a finite order")
    window = default_window() if window is None else window
    budget = default_budget() if budget is None else budget
    if window < 1:
        raise ValueError("window must be positive")
    D = denom
    acc: dict[int, int] = {}
    top = _top_index(order, D)
    quiet = 0
    r = 0
    while True:
        if r >= budget:
            raise BudgetExceeded(f"no convergence within {budget} shells")
        active = False
        for idx in shell(domain, r):
            t = term(idx)
            if t is None:
                continue
            if isinstance(t, tuple):
                c, e = t
                if not c:
                    continue
                e = as_rational(e)
                if e >= order:
                    continue
                k = e * D
                if k.denominator != 1:
                    newD = math.lcm(D, e.denominator)
                    f = newD // D
                    acc = {kk * f: v for kk, v in acc.items()}
                    D = newD
                    top = _top_index(order, D)
                    k = e * D
                k = int(k)
                acc[k] = acc.get(k, 0) + c
                active = True
                continue
            if t.top is not None and t.order < order:
                raise OrderError(f"term {idx} is only reliable below {t.order} < {order}")
            if t.denom != D and D % t.denom:
                newD = math.lcm(D, t.denom)
                f = newD // D
                acc = {kk * f: v for kk, v in acc.items()}
                D = newD
                top = _top_index(order, D)
            if t.denom != D:
                t = t.rescale(D)
            lo = t.lo
            for i, c in enumerate(t.coeffs):
                k = lo + i
                if k >= top:
                    break
                if c:
                    acc[k] = acc.get(k, 0) + c
                    active = True
        if active or r < min_shells:
            quiet = 0
        else:
            quiet += 1
            if quiet >= window:
                break
        r += 1
    if not acc:
        return QSeries._raw(D, 0, [], top)
    lo = min(acc)
    hi = max(acc)
    coeffs = [0] * (hi - lo + 1)
    for k, v in acc.items():
        coeffs[k - lo] = v
    return QSeries._raw(D, lo, coeffs, top)


def series_sum(items: Iterable[QSeries], order=INF, denom: int = 1) -> QSeries:
    """Finite sum of series (empty sum is the zero series at `order`)."""
    total = QSeries.zero(order, denom)
    for s in items:
        total = total + s
    return total
