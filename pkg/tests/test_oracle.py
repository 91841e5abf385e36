from fractions import Fraction

import pytest

from qbailey.configsum import X
from qbailey.oracle import (LatticePath, PartSpec, conjugate, count_paths, enumerate_paths,
                            hook_partition_gen_fn, partition_count_products, path_generating_fn)
from qbailey.qtools import mono, poch, poch_reciprocal
from qbailey.series import INF, BudgetExceeded, QSeries, equal_to_order
from qbailey.verify import check_hook_grid, check_hooks, check_path_grid, check_paths


def monomial(e):
    return QSeries.monomial(1, Fraction(e))


class TestPaths:
    def test_single_step_by_hand(self):
        # (2,1,2) at (2,5): the middle vertex is a local minimum in band 1, weight 1
        assert path_generating_fn(2, 5, 2, 1, 2, 1) == monomial(1)
        # (2,3,2): local maximum, weight -1
        assert path_generating_fn(2, 5, 2, 3, 2, 1) == monomial(-1)
        # (2,3,4): a straight step always weighs 1/2
        assert path_generating_fn(2, 5, 2, 3, 4, 1) == monomial(Fraction(1, 2))

    def test_unit_steps_enforced(self):
        with pytest.raises(ValueError):
            LatticePath((1, 3), Fraction(0))

    def test_counts_match_enumeration(self):
        for L in range(0, 11):
            paths = list(enumerate_paths(3, 5, 2, 1 + (L % 2), 2 + (L % 2), L))
            assert len(paths) == count_paths(5, 2, 1 + (L % 2), L)

    @pytest.mark.parametrize("L", range(0, 15, 2))
    def test_golden_grid_against_formula(self, L):
        assert check_paths(2, 5, 2, 1, 2, L + 1).ok

    @pytest.mark.parametrize("p,pp", [(3, 4), (3, 5), (4, 7)])
    def test_height_zero_endpoint(self, p, pp):
        for s in range(1, pp):
            for L in range((s + 1) % 2, 13, 2):
                d = path_generating_fn(p, pp, s, 1, 0, L)
                assert d == X(p, pp, 0, s, L, 1).shift(Fraction(s * (s - 1), 4))

    @pytest.mark.parametrize("p,pp", [(3, 4), (3, 5), (5, 8)])
    def test_ratio_of_endpoints(self, p, pp):
        for s in range(1, pp):
            for L in range(max(2, (s + 1) % 2), 13, 2):
                d2 = path_generating_fn(p, pp, s, 1, 2, L)
                d0 = path_generating_fn(p, pp, s, 1, 0, L)
                assert d2 == d0.shift(Fraction(-L, 2))

    def test_top_endpoint(self):
        assert check_paths(3, 5, 2, 4, 5, 12).ok

    def test_odd_parity_is_empty(self):
        assert path_generating_fn(3, 5, 2, 1, 2, 12).is_zero()
        assert check_paths(3, 5, 2, 1, 2, 12).ok

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_paths(5, 8, 3, 3, 4, 30, limit=1000))

    @pytest.mark.parametrize("p,pp", [(2, 5), (3, 4), (1, 3)])
    def test_model_grid(self, p, pp):
        assert check_path_grid(p, pp, 10).ok


class TestHooks:
    def test_conjugate(self):
        assert conjugate((3, 1)) == (2, 1, 1)
        assert conjugate(()) == ()

    def test_minimal_length(self):
        for s, b in [(2, 2), (3, 1), (1, 3)]:
            g = hook_partition_gen_fn(3, 5, 1, s, b, abs(s - b))
            x = X(3, 5, 1, s, abs(s - b), b)
            assert g == x and len(g.items()) == 1

    @pytest.mark.parametrize("L", range(0, 13, 2))
    def test_golden_against_configuration_sum(self, L):
        assert hook_partition_gen_fn(3, 5, 1, 2, 2, L) == X(3, 5, 1, 2, L, 2)

    @pytest.mark.parametrize("L", range(1, 11, 2))
    def test_boundary_label_zero(self, L):
        assert hook_partition_gen_fn(2, 5, 0, 2, 1, L) == X(2, 5, 0, 2, L, 1)

    def test_precondition_surfaces(self):
        from qbailey.configsum import PreconditionError
        with pytest.raises(PreconditionError):
            check_hooks(3, 5, 1, 2, 4, 6)

    @pytest.mark.parametrize("p,pp", [(2, 5), (3, 4)])
    def test_model_grid(self, p, pp):
        assert check_hook_grid(p, pp, 10).ok


class TestPartitions:
    def test_rogers_ramanujan_residues(self):
        x = partition_count_products(PartSpec(5, (1, 4)), 7)
        assert [x.coeff(n) for n in range(7)] == [1, 1, 1, 1, 2, 2, 3]

    def test_distinct_equals_odd(self):
        distinct = partition_count_products(PartSpec(1, (0,), True), 30)
        odd = partition_count_products(PartSpec(2, (1,)), 30)
        assert distinct == odd

    def test_against_product(self):
        x = partition_count_products(PartSpec(5, (2, 3)), 30)
        prod = poch_reciprocal(mono(2), INF, 30, base=5) * poch_reciprocal(mono(3), INF, 30, base=5)
        assert equal_to_order(x, prod, 30)

    def test_distinct_against_product(self):
        x = partition_count_products(PartSpec(1, (0,), True), 25)
        assert equal_to_order(x, poch(mono(1, -1), INF, 25), 25)
