"""Property tests for the algebraic invariants."""
from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from qbailey import bailey as bl
from qbailey.qtools import mono, poch, qbinomial, qbinomial_inverted
from qbailey.series import QSeries, equal_to_order, sum_converging

coeffs = st.lists(st.integers(-20, 20), min_size=1, max_size=12)
exponents = st.fractions(min_value=-3, max_value=3, max_denominator=4)
orders = st.integers(4, 20)


@st.composite
def series(draw, order=None):
    start = draw(st.integers(-2, 4))
    denom = draw(st.sampled_from([1, 2, 4]))
    o = draw(orders) if order is None else order
    return QSeries.from_dense(draw(coeffs), Fraction(start, denom), o, denom)


@st.composite
def unit_series(draw):
    rest = draw(st.lists(st.integers(-9, 9), max_size=10))
    lead = draw(st.sampled_from([1, -1]))
    v = draw(st.integers(-3, 3))
    return QSeries.from_dense([lead] + rest, v, draw(orders))


settings.register_profile("qbailey", max_examples=60, deadline=None)
settings.load_profile("qbailey")


class TestRing:
    @given(series(), series(), series())
    def test_associative_and_distributive(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(series(), series())
    def test_commutative(self, x, y):
        assert x + y == y + x
        assert x * y == y * x

    @given(series())
    def test_identities(self, x):
        assert x + QSeries.zero() == x
        assert x * QSeries.one() == x
        assert (x - x).is_zero()

    @given(unit_series())
    def test_two_sided_inverse(self, x):
        inv = x.invert()
        prod = x * inv
        assert prod.order >= x.order - x.valuation - 1
        assert equal_to_order(prod, QSeries.one(), prod.order)
        assert equal_to_order(inv * x, QSeries.one(), prod.order)

    @given(coeffs, coeffs, st.integers(1, 10), st.integers(1, 10))
    def test_product_order_is_never_optimistic(self, a, b, oa, ob):
        exact = QSeries.from_dense(a) * QSeries.from_dense(b)
        got = QSeries.from_dense(a, 0, oa) * QSeries.from_dense(b, 0, ob)
        assert equal_to_order(got, exact, got.order)

    @given(series(), exponents)
    def test_shift_is_multiplication(self, x, e):
        assert x.shift(e) == x * QSeries.monomial(1, e)

    @given(coeffs)
    def test_reciprocal_is_an_involution(self, a):
        x = QSeries.from_dense(a, 1)
        assert x.reciprocal_q().reciprocal_q() == x


class TestInfiniteSums:
    @given(st.integers(1, 5), st.integers(5, 60), st.sampled_from([1, 2, 3]))
    def test_window_does_not_change_the_answer(self, w, order, step):
        # sum over Z of q^{step n^2} z^n at z = 1: terms are sparse, so a narrow window is tempting
        def term(n):
            return (1, step * n * n)

        a = sum_converging(term, order, domain="Z", window=w)
        b = sum_converging(term, order, domain="Z", window=w + 1)
        assert a == b


class TestGaussian:
    @given(st.integers(1, 20), st.data())
    def test_pascal(self, n, data):
        m = data.draw(st.integers(0, n))
        lhs = qbinomial(n, m)
        assert lhs == qbinomial(n - 1, m - 1) + qbinomial(n - 1, m).shift(m)
        assert lhs == qbinomial(n - 1, m - 1).shift(n - m) + qbinomial(n - 1, m)

    @given(st.integers(0, 20), st.data())
    def test_symmetric_and_palindromic(self, n, data):
        m = data.draw(st.integers(0, n))
        x = qbinomial(n, m)
        assert x == qbinomial(n, n - m)
        assert qbinomial_inverted(n, m) == x.shift(m * (m - n))

    @given(st.integers(0, 15), st.integers(-3, 3), st.sampled_from([1, -1]))
    def test_q_binomial_theorem(self, n, e, sign):
        a = mono(e, sign)
        rhs = QSeries.zero()
        for k in range(n + 1):
            rhs = rhs + qbinomial(n, k).shift(e * k + k * (k - 1) // 2).scale((-sign) ** k)
        assert poch(a, n) == rhs

    @given(exponents, st.sampled_from([1, -1]), st.integers(0, 8), st.integers(0, 8))
    def test_poch_splits(self, e, sign, m, n):
        a = mono(e, sign)
        assert poch(a, m + n) == poch(a, m) * poch(a.shifted(m), n)


rho_choice = st.one_of(st.none(), st.builds(mono, st.fractions(min_value=Fraction(1, 2), max_value=3,
                                                               max_denominator=2),
                                            st.sampled_from([1, -1])))


class TestBaileyMachinery:
    @settings(max_examples=12)
    @given(rho_choice, rho_choice, st.sampled_from(["initial", "rogers", "rogers-q"]))
    def test_transform_keeps_the_defining_relation(self, rho1, rho2, which):
        pair = {"initial": bl.initial_pair, "rogers": bl.rogers_pair, "rogers-q": bl.rogers_pair_shifted}[which]()
        aq = Fraction(pair.eta + 1)
        for rho in (rho1, rho2):
            # aq/rho = +-q^k with k <= 0 leaves no integral inverse Pochhammer
            gap = None if rho is None else aq - rho.exponent
            assume(gap is None or gap > 0 or gap.denominator != 1)
        out = bl.bailey_transform(pair, (rho1, rho2))
        rep = bl.verify_bailey_pair(out, 4, 20)
        assert rep.ok, rep.record()

    @settings(max_examples=25)
    @given(st.integers(0, 3), st.lists(coeffs, min_size=5, max_size=5), st.lists(coeffs, min_size=5, max_size=5),
           st.integers(-2, 2))
    def test_duality_swap_preserves_summands(self, eta, bs, ds, k):
        beta = bl.SeriesSequence(lambda L, o: QSeries.from_dense(bs[L]).truncate(o))
        delta = bl.SeriesSequence(lambda L, o: QSeries.from_dense(ds[L]).truncate(o))
        bbar, dbar = bl.duality_swap(beta, delta, eta, lambda L: Fraction(k * L, 2))
        for L in range(5):
            assert equal_to_order(beta(L, 20) * delta(L, 20), bbar(L, 20) * dbar(L, 20), 15)
            sh = Fraction(k * L, 2)
            expected = (beta(L, 20) * poch(mono(1), 2 * L + eta)).shift(sh)
            assert equal_to_order(dbar(L, 20), expected, 15)
