from fractions import Fraction

import pytest

from qbailey.configsum import PreconditionError, X
from qbailey.fermion import (admissible_cases, build_cf_system, cf_digits, cf_value, fermionic_f,
                             fermionic_X, fermionic_X_detail, find_form, level_n_x_first,
                             level_n_x_second, takahashi_index, truncated_length)
from qbailey.qtools import mono, poch, qbinomial
from qbailey.series import QSeries

PRIMAL = [(3, 5), (3, 4), (4, 7), (5, 8), (5, 7), (4, 5), (5, 6), (7, 9), (8, 13)]


def a_type(d):
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(d)) for i in range(d))


class TestContinuedFractions:
    def test_digits_round_trip(self):
        for num, den in [(3, 2), (5, 3), (8, 5), (7, 2)]:
            assert cf_value(cf_digits(num, den)) == Fraction(num, den)

    @pytest.mark.parametrize("p,pp", PRIMAL)
    def test_endpoints(self, p, pp):
        cf = build_cf_system(p, pp)
        n = cf.n
        assert cf.y[n + 1] == pp and cf.ybar[n + 1] == p

    @pytest.mark.parametrize("p,pp", PRIMAL)
    def test_partial_convergents(self, p, pp):
        cf = build_cf_system(p, pp)
        for m in range(1, cf.n + 2):
            assert Fraction(cf.ybar[m], cf.y[m] - cf.ybar[m]) == cf_value(cf.nu[:m])

    def test_golden_model(self):
        cf = build_cf_system(3, 5)
        assert cf.d == 1
        assert cf.B == ((1,),)

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_a_type_for_unitary(self, p):
        cf = build_cf_system(p, p + 1)
        assert cf.B == a_type(cf.d)

    @pytest.mark.parametrize("p", [3, 5, 7, 9])
    def test_tadpole_for_gap_two(self, p):
        cf = build_cf_system(p, p + 2)
        d = cf.d
        expected = [list(row) for row in a_type(d)]
        expected[d - 1][d - 1] = 1
        assert cf.B == tuple(tuple(row) for row in expected)

    @pytest.mark.parametrize("p,pp", [(2, 5), (3, 3), (2, 4), (3, 7)])
    def test_rejects_outside_range(self, p, pp):
        with pytest.raises(PreconditionError):
            build_cf_system(p, pp)


class TestTakahashi:
    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_unitary_every_height(self, p):
        cf = build_cf_system(p, p + 1)
        assert all(takahashi_index(cf, s) is not None for s in range(1, p + 1))

    def test_golden_lengths(self):
        cf = build_cf_system(3, 5)
        assert takahashi_index(cf, 1) == 0
        assert takahashi_index(cf, 5) is None
        assert truncated_length(cf, 1) == 0
        assert truncated_length(cf, 4) is None


class TestFermionicSum:
    def test_empty_lattice(self):
        cf = build_cf_system(3, 5)
        assert fermionic_f(cf, (0, 0), (0, 0)) == QSeries.one()

    @pytest.mark.parametrize("L", range(0, 17))
    def test_golden_against_bosonic(self, L):
        if L % 2:
            return
        assert fermionic_X(3, 5, 0, 1, 1, L) == X(3, 5, 0, 1, L, 1)

    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_dual_golden_against_bosonic(self, s):
        for L in range((s + 1) % 2, 17, 2):
            assert fermionic_X(2, 5, 0, s, 1, L) == X(2, 5, 0, s, L, 1)

    def test_no_skipped_lattice_points(self):
        for p, pp in [(3, 5), (4, 7), (5, 8), (5, 7)]:
            for r, s, b, L in admissible_cases(p, pp, 12):
                res = fermionic_X_detail(p, pp, r, s, b, L)
                assert res.skipped == 0

    def test_wrong_vector_length(self):
        with pytest.raises(ValueError):
            fermionic_f(build_cf_system(4, 7), (1, 0), (0, 0))


class TestBoseFermi:
    @pytest.mark.parametrize("p,pp", [(3, 5), (2, 5), (3, 4), (4, 7), (3, 7), (5, 8), (5, 7), (4, 5)])
    def test_grid(self, p, pp):
        cases = admissible_cases(p, pp, 20)
        assert cases
        for r, s, b, L in cases:
            assert fermionic_X(p, pp, r, s, b, L) == X(p, pp, r, s, L, b), (r, s, b, L)

    @pytest.mark.parametrize("p,pp", [(3, 5), (2, 5), (4, 7), (3, 7)])
    def test_normalization(self, p, pp):
        for r, s, b, L in admissible_cases(p, pp, 10):
            if L >= abs(s - b):
                x = fermionic_X(p, pp, r, s, b, L)
                assert x.shift(-x.valuation).coeff(0) == 1

    def test_non_takahashi_rejected(self):
        cf = build_cf_system(5, 8)
        assert 4 not in cf.lengths and 8 - 4 not in cf.lengths
        assert find_form(5, 8, 0, 4, 1) is None
        with pytest.raises(PreconditionError):
            fermionic_X(5, 8, 0, 4, 1, 5)

    def test_parity_rejected(self):
        with pytest.raises(PreconditionError):
            fermionic_X(3, 5, 0, 1, 1, 3)


def schur(s, L):
    """The four (2,5) polynomial displays, written out directly."""
    def total(lo, hi, top, quad):
        out = QSeries.zero()
        for n in range(lo, hi + 1):
            out = out + qbinomial(top(n), n).shift(quad(n))
        return out
    if s == 1:
        return (QSeries.one() + total(1, L - 1, lambda n: 2 * L - 2 - n, lambda n: n * (n + 1))).shift(L)
    if s == 2:
        return total(0, L, lambda n: 2 * L - n, lambda n: n * n).shift(L)
    if s == 3:
        return total(0, L - 1, lambda n: 2 * L - 1 - n, lambda n: n * n).shift(L - 1)
    return total(0, L - 1, lambda n: 2 * L - 1 - n, lambda n: n * (n + 1)).shift(L - 1)


class TestClosedForms:
    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_schur_displays(self, s):
        for L in range(1, 11):
            length = 2 * L if s % 2 else 2 * L + 1
            assert fermionic_X(2, 5, 0, s, 1, length) == schur(s, L)

    def test_ising_odd(self):
        for L in range(0, 10):
            assert fermionic_X(3, 4, 0, 2, 1, 2 * L + 1) == poch(mono(1, -1), L).shift(L)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_ising_even(self, sign):
        for L in range(0, 10):
            lhs = (fermionic_X(3, 4, 0, 1, 1, 2 * L)
                   + fermionic_X(3, 4, 0, 3, 1, 2 * L).shift(Fraction(3, 2)).scale(sign))
            rhs = poch(mono(Fraction(1, 2), -sign), L).shift(L)
            assert lhs == rhs

    @pytest.mark.parametrize("N", [2, 3])
    def test_integer_level_lattice_forms(self, N):
        for l in range(N + 1):
            for L in range(l % 2, 13, 2):
                target = fermionic_X(1, N + 2, 0, l + 1, 1, L)
                assert level_n_x_first(N, l, L) == target
                assert level_n_x_second(N, l, L) == target
