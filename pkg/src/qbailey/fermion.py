"""Continued-fraction data and constant-sign (fermionic) sums for configuration sums.

For 1 <= p < p' < 2p with gcd 1 the digits of p/(p'-p) fix a Cartan-type
matrix B, a family of distinguished heights (Takahashi lengths) and the
parity vectors that select the summation lattice of

    f(u, v) = sum_m q^{m B m / 4 - A.m / 2} prod_j [m_j + n_j, m_j],

where n is tied to m by m + n = (I_B m + u* + v*)/2.  The normalized
formulas built from f reproduce the bosonic configuration sums; the
normalization exponent is fixed at run time by the q = 0 condition, never
from a closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .configsum import PreconditionError, X
from .linalg import cartan_inverse_a
from .qtools import qbinomial
from .series import INF, BudgetExceeded, QSeries, _order_value, default_budget


class ConventionError(AssertionError):
    """The continued-fraction bookkeeping failed one of its consistency checks."""


def cf_digits(num: int, den: int) -> list[int]:
    """Continued fraction digits of num/den, last digit >= 2 unless there is only one."""
    digits = []
    while den:
        a, rem = divmod(num, den)
        digits.append(a)
        num, den = den, rem
    return digits


def cf_value(digits) -> Fraction:
    val = Fraction(digits[-1])
    for a in reversed(digits[:-1]):
        val = a + 1 / val
    return val


@dataclass(frozen=True)
class CFSystem:
    p: int
    pp: int
    nu: tuple
    t: tuple              # t[0] = -1, t[1..n], t[n+1] = d
    d: int
    incidence: tuple      # d x d, rows/cols indexed 1..d stored 0-based
    B: tuple
    y: dict = field(compare=False)
    ybar: dict = field(compare=False)
    lengths: tuple        # l_1 .. l_{d+2}
    truncated: tuple      # lbar_1 .. lbar_{d+2}
    Q: tuple              # Q^(1) .. Q^(d+1), each of length d

    @property
    def n(self) -> int:
        return len(self.nu) - 1

    def band(self, j: int) -> int:
        """The m with t_m < j <= t_{m+1} + delta_{m,n}."""
        n = self.n
        for m in range(n + 1):
            upper = self.t[m + 1] + (1 if m == n else 0)
            if self.t[m] < j <= upper:
                return m
        raise ValueError(f"index {j} lies in no band")

    def unit(self, i: int) -> tuple:
        """e_i in Z^{d+1}, with e_0 = 0."""
        vec = [0] * (self.d + 1)
        if i:
            vec[i - 1] = 1
        return tuple(vec)

    def u_vector(self, i: int) -> tuple:
        """u_i = e_i - sum over later band starts of e_{t_k}."""
        m = self.band(i)
        vec = list(self.unit(i))
        for k in range(m + 1, self.n + 1):
            vec[self.t[k] - 1] -= 1
        return tuple(vec)

    def linear_term(self, u, v) -> list[int]:
        """A_{u,v}: u on odd bands, v on even bands (components 1..d)."""
        out = []
        for k in range(1, self.d + 1):
            m = next(mm for mm in range(self.n + 1) if self.t[mm] < k <= self.t[mm + 1])
            out.append(u[k - 1] if m % 2 else v[k - 1])
        return out

    def parity_class(self, w) -> list[int]:
        """Q_w = sum_j w_j Q^(j) reduced mod 2."""
        out = [0] * self.d
        for j in range(1, self.d + 2):
            if w[j - 1]:
                for i in range(self.d):
                    out[i] += w[j - 1] * self.Q[j - 1][i]
        return [x % 2 for x in out]


def _q_vectors(t, d: int, n: int) -> list[list[int]]:
    """Q^(j) for j = 1..d+1 by the downward recursion; index d+1 is kept internally."""
    out = []
    for j in range(1, d + 2):
        m = next(mm for mm in range(n + 1) if t[mm] < j <= t[mm + 1] + (1 if mm == n else 0))
        Qj = {}
        for i in range(max(t[m], 1), d + 2):
            Qj[i] = max(j - i, 0)
        for mp in range(m, 0, -1):
            for i in range(t[mp] - 1, t[mp - 1] - 1, -1):
                if i < 1:
                    continue
                Qj[i] = Qj[i + 1] + Qj[t[mp] + 1]
        out.append([Qj[i] for i in range(1, d + 1)])
    return out


@lru_cache(maxsize=256)
def build_cf_system(p: int, pp: int) -> CFSystem:
    """All continued-fraction data for 1 <= p < p' < 2p, gcd(p, p') = 1."""
    if not (1 <= p < pp < 2 * p):
        raise PreconditionError(f"need 1 <= p < p' < 2p, got ({p}, {pp})")
    if math.gcd(p, pp) != 1:
        raise PreconditionError("p and p' must be coprime")
    nu = cf_digits(p, pp - p)
    n = len(nu) - 1
    t = [-1] + [sum(nu[:m]) for m in range(1, n + 1)]
    d = sum(nu) - 2
    t.append(d)

    y = {-1: 0, 0: 1, 1: nu[0] + 1}
    ybar = {-1: -1, 0: 1, 1: nu[0]}
    for m in range(1, n + 1):
        y[m + 1] = y[m - 1] + nu[m] * y[m]
        ybar[m + 1] = ybar[m - 1] + nu[m] * ybar[m]
    if y[n + 1] != pp or ybar[n + 1] != p:
        raise ConventionError(f"recursion ends at ({y[n + 1]}, {ybar[n + 1]}) instead of ({pp}, {p})")
    for m in range(1, n + 2):
        if y[m] == ybar[m]:
            continue
        if Fraction(ybar[m], y[m] - ybar[m]) != cf_value(nu[:m]):
            raise ConventionError(f"convergent {m} does not match the digits")

    starts = set(t[1:n + 1])
    inc = [[0] * d for _ in range(d)]
    for i in range(1, d + 1):
        row = inc[i - 1]
        if i == d:
            if d >= 2:
                row[d - 2] = 1
            if nu[n] == 2:
                row[d - 1] += 1
        elif i in starts:
            if i >= 2:
                row[i - 2] = 1
            row[i - 1] += 1
            row[i] = -1
        else:
            if i >= 2:
                row[i - 2] = 1
            row[i] = 1
    B = [[2 * (i == j) - inc[i][j] for j in range(d)] for i in range(d)]

    lengths, truncated = [], []
    for j in range(0, d + 2):
        m = next(mm for mm in range(n + 1) if t[mm] < j <= t[mm + 1] + (1 if mm == n else 0))
        lengths.append(y[m - 1] + (j - t[m]) * y[m])
        truncated.append(ybar[m - 1] + (j - t[m]) * ybar[m])

    Q = _q_vectors(t, d, n)
    cf = CFSystem(p, pp, tuple(nu), tuple(t), d,
                  tuple(map(tuple, inc)), tuple(map(tuple, B)), y, ybar,
                  tuple(lengths), tuple(truncated), tuple(map(tuple, Q)))
    _assert_structure(cf)
    return cf


def _assert_structure(cf: CFSystem) -> None:
    d = cf.d
    if cf.pp == cf.p + 1 and d >= 1:
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(d)] for i in range(d)]
        if [list(r) for r in cf.B] != cartan:
            raise ConventionError("p' = p+1 must give an A-type Cartan matrix")
        if sorted(cf.lengths) != list(range(1, cf.pp)):
            raise ConventionError("p' = p+1 must make every height a Takahashi length")
    if cf.pp == cf.p + 2 and d >= 1:
        tad = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(d)] for i in range(d)]
        tad[d - 1][d - 1] = 1
        if [list(r) for r in cf.B] != tad:
            raise ConventionError("p' = p+2 must give the tadpole matrix")
    if cf.nu[-1] == 2 and cf.n >= 1:
        j = cf.t[cf.n] + 1
        if j <= d and cf.Q[j - 1][j - 1] != 0:
            raise ConventionError("the last parity vector must vanish on its own index")
    if any(not 1 <= x <= cf.pp - 1 for x in cf.lengths):
        raise ConventionError("Takahashi lengths must lie in 1..p'-1")
    if any(not 0 <= x <= cf.p - 1 for x in cf.truncated):
        raise ConventionError("truncated lengths must lie in 0..p-1")


def takahashi_index(cf: CFSystem, s: int):
    """sigma with l_{sigma+1} = s, or None."""
    for k, val in enumerate(cf.lengths):
        if val == s:
            return k
    return None


def truncated_length(cf: CFSystem, b: int):
    """bbar for a Takahashi length b, or None."""
    k = takahashi_index(cf, b)
    return None if k is None else cf.truncated[k]


# ----------------------------------------------------------------------
# The fermionic sum


@dataclass
class FermionicResult:
    series: QSeries
    skipped: int
    terms: int


def _box_size(w: list[int]) -> int:
    """Enumeration radius for m; the support is checked to stay strictly inside."""
    return sum(abs(x) for x in w) + 2


def fermionic_f_detail(cf: CFSystem, u, v, order=INF) -> FermionicResult:
    """f(u, v) together with enumeration diagnostics.

    The q-binomials follow the quotient definition: [N, m] vanishes unless
    m >= 0, and a negative top entry N is allowed.  The lattice is scanned
    over a box; a nonzero term in the two outermost layers raises, so the
    box can never cut off part of the sum silently.
    """
    order = _order_value(order)
    d = cf.d
    u, v = tuple(u), tuple(v)
    if len(u) != d + 1 or len(v) != d + 1:
        raise ValueError("u and v must have d+1 components")
    if d == 0:
        return FermionicResult(QSeries.one(order), 0, 1)
    w = [u[k] + v[k] for k in range(d)]
    cls = cf.parity_class([u[k] + v[k] for k in range(d + 1)])
    A = cf.linear_term(u, v)
    inc = cf.incidence
    B = cf.B
    size = _box_size(w)
    total = QSeries.zero(order, 4)
    skipped = 0
    terms = 0
    budget = default_budget() * 1000
    for m in product(*(range(cls[i], size + 1, 2) for i in range(d))):
        twice_top = [sum(inc[i][k] * m[k] for k in range(d)) + w[i] for i in range(d)]
        if any(x % 2 for x in twice_top):
            skipped += 1
            continue
        term = QSeries.one()
        for i in range(d):
            term = term * qbinomial(twice_top[i] // 2, m[i])
            if term.is_zero():
                break
        if term.is_zero():
            continue
        if max(m) > size - 2:
            raise BudgetExceeded("fermionic support reaches the enumeration box")
        terms += 1
        if terms > budget:
            raise BudgetExceeded("fermionic lattice too large")
        quad = sum(m[i] * B[i][k] * m[k] for i in range(d) for k in range(d))
        e = Fraction(quad, 4) - Fraction(sum(A[i] * m[i] for i in range(d)), 2)
        total = total + term.shift(e)
    if order != INF:
        total = total.truncate(order)
    return FermionicResult(total, skipped, terms)


def fermionic_f(cf: CFSystem, u, v, order=INF) -> QSeries:
    return fermionic_f_detail(cf, u, v, order).series


def _add(*vecs):
    return tuple(sum(c) for c in zip(*vecs))


def _scaled_unit(cf: CFSystem, L: int):
    return tuple(L * x for x in cf.unit(1))


# ----------------------------------------------------------------------
# Normalized fermionic configuration sums


@dataclass(frozen=True)
class FermionicForm:
    """Which fermionic formula represents a configuration sum, and with what data."""

    kind: str          # "F", "F0s", "F0ps"
    dual: bool
    primal: tuple      # (p, p') of the primal system
    sigma: int
    beta: int | None
    delta: Fraction    # normalization exponent of the primal formula


def _primal_form(cf: CFSystem, r: int, s: int, b: int):
    """Identify the applicable primal formula for X^{(p,p')}_{r,s}(L,b)."""
    sig = takahashi_index(cf, s)
    if b == 1 and r == 0:
        if sig is not None:
            return "F0s", sig, None
        sig2 = takahashi_index(cf, cf.pp - s)
        if sig2 is not None:
            return "F0ps", sig2, None
        return None
    beta = takahashi_index(cf, b)
    if beta is None or beta < 1 or sig is None:
        return None
    if cf.truncated[beta] != r:
        return None
    return "F", sig, beta


def _primal_vectors(cf: CFSystem, kind: str, sigma: int, beta, L: int):
    left_base = cf.u_vector(0) if kind != "F" else cf.u_vector(beta)
    left = _add(_scaled_unit(cf, L), left_base)
    right = cf.u_vector(sigma)
    if kind == "F0ps":
        right = _add(right, cf.u_vector(cf.d + 1))
    return left, right


def _primal_target_valuation(cf: CFSystem, kind: str, s: int, L: int) -> Fraction:
    if kind == "F":
        return Fraction(0)
    if kind == "F0s":
        return Fraction(L - s + 1, 2)
    return Fraction(L - (cf.pp - s) + 1, 2)


def _primal_prefactor(kind: str, L: int) -> Fraction:
    return Fraction(0) if kind == "F" else Fraction(L, 2)


@lru_cache(maxsize=4096)
def normalization(p: int, pp: int, kind: str, sigma: int, beta) -> Fraction:
    """The exponent Delta fixed by the q = 0 condition at the smallest admissible L."""
    cf = build_cf_system(p, pp)
    s = cf.lengths[sigma]
    if kind == "F":
        b = cf.lengths[beta]
    else:
        b = 1
    s_eff = s if kind != "F0ps" else pp - s
    L0 = abs(s_eff - b)
    left, right = _primal_vectors(cf, kind, sigma, beta, L0)
    f = fermionic_f(cf, left, right)
    if f.is_zero():
        raise ConventionError("fermionic sum vanishes at the reference length")
    if f.coeff(f.valuation) != 1:
        raise ConventionError("fermionic sum does not start with coefficient 1")
    target = _primal_target_valuation(cf, kind, s, L0)
    return target - _primal_prefactor(kind, L0) - f.valuation


def find_form(p: int, pp: int, r: int, s: int, b: int) -> FermionicForm | None:
    """The fermionic formula covering X^{(p,p')}_{r,s}(L,b), if any."""
    if math.gcd(p, pp) != 1:
        return None
    if pp < 2 * p:
        cf = build_cf_system(p, pp)
        hit = _primal_form(cf, r, s, b)
        if hit is None:
            return None
        kind, sigma, beta = hit
        return FermionicForm(kind, False, (p, pp), sigma, beta, normalization(p, pp, kind, sigma, beta))
    if pp > 2 * p:
        P = pp - p
        cf = build_cf_system(P, pp)
        if b == 1 and r == 0:
            hit = _primal_form(cf, 0, s, 1)
        else:
            beta = takahashi_index(cf, b)
            if beta is None or beta < 1:
                return None
            hit = _primal_form(cf, b - r, s, b)
        if hit is None:
            return None
        kind, sigma, beta = hit
        return FermionicForm(kind, True, (P, pp), sigma, beta, normalization(P, pp, kind, sigma, beta))
    return None


def fermionic_X_detail(p: int, pp: int, r: int, s: int, b: int, L: int,
                       order=INF) -> FermionicResult:
    """X^{(p,p')}_{r,s}(L,b) from its fermionic representation, with diagnostics."""
    if (L + s + b) % 2:
        raise PreconditionError("L+s+b even is required")
    form = find_form(p, pp, r, s, b)
    if form is None:
        raise PreconditionError(f"no fermionic form for (p,p')=({p},{pp}), r={r}, s={s}, b={b}")
    P, Pp = form.primal
    cf = build_cf_system(P, Pp)
    left, right = _primal_vectors(cf, form.kind, form.sigma, form.beta, L)
    if not form.dual:
        res = fermionic_f_detail(cf, left, right)
        pref = _primal_prefactor(form.kind, L) + form.delta
    else:
        res = fermionic_f_detail(cf, right, left)
        if form.kind == "F":
            pref = Fraction(L * L - (b - s) ** 2, 4) - form.delta
        else:
            # s is the target index here, i.e. p' minus the primal length for F0ps
            pref = Fraction(L * L - s * s + 1, 4) - form.delta
    series = res.series.shift(pref).truncate(_order_value(order))
    return FermionicResult(series, res.skipped, res.terms)


def fermionic_X(p: int, pp: int, r: int, s: int, b: int, L: int, order=INF) -> QSeries:
    """X^{(p,p')}_{r,s}(L,b) from its fermionic representation."""
    return fermionic_X_detail(p, pp, r, s, b, L, order).series


def admissible_cases(p: int, pp: int, Lmax: int):
    """Every (r, s, b, L) with L <= Lmax that has a fermionic form."""
    out = []
    for s in range(1, pp):
        for b in range(1, pp):
            for r in range(0, p + 1):
                if find_form(p, pp, r, s, b) is None:
                    continue
                for L in range(0, Lmax + 1):
                    if (L + s + b) % 2 == 0:
                        out.append((r, s, b, L))
    return out


# ----------------------------------------------------------------------
# Integer-level forms with the A_{N-1} lattice


def a_type_lattice_sum(N: int, L: int, l_vec: int, congruence_base: Fraction, order=INF) -> QSeries:
    """sum over n of q^{n Cinv (n - e_k)} [m + n, n], m = Cinv (L e_1 + e_k - 2n)."""
    dim = N - 1
    if dim == 0:
        if congruence_base.denominator != 1:
            return QSeries.zero(order)
        return QSeries.one(order)
    cinv = cartan_inverse_a(N)
    ek = [1 if (i + 1) == l_vec else 0 for i in range(dim)]
    rhs0 = [L * (1 if i == 0 else 0) + ek[i] for i in range(dim)]
    base_m = [sum(cinv[i][k] * rhs0[k] for k in range(dim)) for i in range(dim)]
    bounds = [math.floor(base_m[i] / (2 * cinv[i][i])) for i in range(dim)]
    total = QSeries.zero(order, 4)
    for n in product(*(range(0, max(bnd, -1) + 1) for bnd in bounds)):
        first = sum(cinv[0][k] * n[k] for k in range(dim))
        if (congruence_base + first).denominator != 1:
            continue
        m = [base_m[i] - 2 * sum(cinv[i][k] * n[k] for k in range(dim)) for i in range(dim)]
        if any(x.denominator != 1 or x < 0 for x in m):
            continue
        e = sum(n[a] * cinv[a][c] * (n[c] - ek[c]) for a in range(dim) for c in range(dim))
        term = QSeries.one()
        for i in range(dim):
            term = term * qbinomial(int(m[i]) + n[i], n[i])
        total = total + term.shift(e)
    return total


def level_n_x_first(N: int, l: int, L: int) -> QSeries:
    """X^{(1,N+2)}_{0,l+1}(L,1) from the lattice sum with e_l."""
    base = Fraction(L + l, 2 * N)
    s = a_type_lattice_sum(N, L, l, base)
    return s.shift(Fraction(L * L - l * l, 4 * N))


def level_n_x_second(N: int, l: int, L: int) -> QSeries:
    """X^{(1,N+2)}_{0,l+1}(L,1) from the lattice sum with e_{N-l}."""
    base = Fraction(L - l, 2 * N)
    s = a_type_lattice_sum(N, L, N - l, base)
    return s.shift(Fraction(L * L - l * l, 4 * N))
