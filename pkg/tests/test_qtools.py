from fractions import Fraction
from itertools import combinations

import pytest

from qbailey.qtools import (mono, poch, poch_reciprocal, qbinomial, qbinomial_inverted, qfac, qfac_inv,
                            triple_product_lhs, triple_product_rhs)
from qbailey.series import INF, NonUnitError, QSeries, equal_to_order, sum_converging


def distinct_partition_count(n):
    """Count partitions of n into distinct parts by listing subsets of 1..n."""
    parts = range(1, n + 1)
    return sum(1 for k in range(n + 1) for c in combinations(parts, k) if sum(c) == n)


def coeffs(x, n):
    return [x.coeff(e) for e in range(n)]


class TestPoch:
    def test_finite_product_expanded(self):
        assert poch(mono(1), 3) == QSeries.from_dense([1, -1, -1, 0, 1, 1, -1], 0)

    def test_negative_index_with_zero_factor_in_denominator(self):
        with pytest.raises(ZeroDivisionError):
            poch(mono(1), -1, 10)

    def test_negative_index_quotient(self):
        # (q^2)_{-1} = 1/(1 - q)
        x = poch(mono(2), -1, 8)
        assert coeffs(x, 8) == [1] * 8

    def test_distinct_parts_product(self):
        x = poch(mono(1, -1), INF, 10)
        assert coeffs(x, 6) == [1, 1, 1, 2, 2, 3]
        assert coeffs(x, 10) == [distinct_partition_count(n) for n in range(10)]

    def test_infinite_product_at_one_is_zero(self):
        assert poch(mono(0), INF, 10).is_zero()

    def test_infinite_product_needs_finite_order(self):
        with pytest.raises(ValueError):
            poch(mono(1), INF, INF)

    def test_leading_coefficient_is_unit(self):
        x = poch(mono(Fraction(1, 2), -1), 5)
        assert x.coeff(0) == 1

    def test_reciprocal(self):
        x = poch(mono(1), INF, 20) * poch_reciprocal(mono(1), INF, 20)
        assert equal_to_order(x, QSeries.one(20), 20)

    def test_qfac_inverse(self):
        assert equal_to_order(qfac(6) * qfac_inv(6, 15), QSeries.one(15), 15)

    def test_splitting(self):
        a = mono(-2, -1)
        lhs = poch(a, 7)
        rhs = poch(a, 3) * poch(a.shifted(3), 4)
        assert lhs == rhs


class TestQBinomial:
    def test_four_choose_two(self):
        assert qbinomial(4, 2) == QSeries.from_dense([1, 1, 2, 1, 1], 0)

    @pytest.mark.parametrize("n", [0, 1, 5, 9])
    def test_m_zero_is_one(self, n):
        assert qbinomial(n, 0) == QSeries.one()

    def test_out_of_range_is_zero(self):
        assert qbinomial(3, 5).is_zero()
        assert qbinomial(3, -1).is_zero()

    def test_degree_and_q_one_value(self):
        from math import comb
        x = qbinomial(9, 4)
        assert max(e for e, _ in x.items()) == 4 * 5
        assert sum(c for _, c in x.items()) == comb(9, 4)

    def test_inverted_evaluation(self):
        for n in range(8):
            for m in range(n + 1):
                assert qbinomial_inverted(n, m) == qbinomial(n, m).shift(m * (m - n))


class TestTripleProduct:
    def test_integer_argument_vanishes(self):
        assert triple_product_lhs(mono(1), 15).is_zero()
        assert triple_product_rhs(mono(1), 15).is_zero()

    @pytest.mark.parametrize("x", [mono(2), mono(Fraction(1, 2)), mono(2, -1), mono(Fraction(3, 4), -1)])
    def test_sides_agree(self, x):
        assert equal_to_order(triple_product_lhs(x, 15), triple_product_rhs(x, 15), 15)

    def test_euler_pentagonal(self):
        # x = q on base q^3 after rescaling: (q; q)_inf = sum (-1)^r q^{r(3r-1)/2}
        lhs = triple_product_lhs(mono(1), 30, base=3)
        assert equal_to_order(lhs, poch(mono(1), INF, 30), 30)

    @pytest.mark.parametrize("n", range(6))
    def test_alternating_sum_vanishes(self, n):
        s = sum_converging(lambda i: ((-1) ** (i % 2), i * (i - 1) // 2 + i * n), 30, domain="Z")
        assert s.is_zero()
