import random
from fractions import Fraction

import pytest

from qbailey.configsum import (ModelParams, PreconditionError, X, XIndex, config_sum, dual_symmetry_check,
                               flip_symmetry_check, rzero_check)
from qbailey.oracle import hook_partition_gen_fn
from qbailey.series import QSeries

GRID = [(1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5), (3, 7), (4, 7), (5, 8)]


def monomial(e):
    return QSeries.monomial(1, Fraction(e))


class TestClosedForms:
    @pytest.mark.parametrize("l", [0, 1])
    def test_level_one_monomials(self, l):
        for L in range(l, 13, 2):
            assert X(1, 3, 0, l + 1, L, 1) == monomial(Fraction(L * L - l * l, 4))

    def test_level_one_label_out_of_range(self):
        with pytest.raises(PreconditionError):
            X(1, 3, 0, 3, 2, 1)

    @pytest.mark.parametrize("l", [0, 1])
    def test_level_minus_half_monomials(self, l):
        for L in range(l, 13, 2):
            assert X(2, 3, 0, l + 1, L, 1) == monomial(Fraction(L - l, 2))


class TestValues:
    def test_small_polynomial(self):
        # coefficients frozen from the hook-partition enumeration
        x = X(2, 5, 0, 2, 7, 1)
        assert x == hook_partition_gen_fn(2, 5, 0, 2, 1, 7)
        assert [c for _, c in x.items()] == [1, 1, 1, 1, 2, 2, 2, 1, 1, 1]
        assert x.valuation == 3

    @pytest.mark.parametrize("p,pp", GRID)
    def test_ground_state_constant_term(self, p, pp):
        for s in range(1, pp):
            for b in range(1, pp):
                L = abs(s - b)
                for r in range(p + 1):
                    x = X(p, pp, r, s, L, b)
                    if not x.is_zero():
                        assert x.shift(-x.valuation).coeff(0) == 1

    @pytest.mark.parametrize("p,pp", [(2, 5), (3, 5), (3, 7)])
    def test_vanishes_below_distance(self, p, pp):
        for s in range(1, pp):
            for b in range(1, pp):
                for L in range(abs(s - b) % 2, abs(s - b), 2):
                    for r in range(p + 1):
                        assert X(p, pp, r, s, L, b).is_zero()

    def test_nonnegative_coefficients(self):
        for p, pp in [(2, 5), (3, 5), (3, 4)]:
            for s in range(1, pp):
                for b in range(1, pp):
                    for L in range((s + b) % 2, 11, 2):
                        for r in range(max(0, b - (pp - p)), min(p, b) + 1):
                            assert all(c > 0 for _, c in X(p, pp, r, s, L, b).items())

    def test_truncated_matches_exact(self):
        full = X(3, 5, 1, 2, 12, 2)
        assert config_sum(ModelParams(3, 5), XIndex(1, 2, 2, 12), 9) == full.truncate(9)


class TestPreconditions:
    def test_parity(self):
        with pytest.raises(PreconditionError, match="L\\+s\\+b even"):
            X(2, 5, 0, 2, 6, 1)

    @pytest.mark.parametrize("args", [(2, 5, 3, 2, 7, 1), (2, 5, 0, 5, 6, 1), (2, 5, 0, 2, -1, 1)])
    def test_ranges(self, args):
        with pytest.raises(PreconditionError):
            X(*args)

    def test_model_order(self):
        with pytest.raises(PreconditionError):
            ModelParams(5, 5)

    def test_coprime_flag(self):
        assert ModelParams(3, 5).coprime
        assert not ModelParams(2, 4).coprime


def _random_indices(seed, p, pp, count=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s, b, r, L = rng.randint(1, pp - 1), rng.randint(1, pp - 1), rng.randint(0, p), rng.randint(0, 12)
        if (L + s + b) % 2 == 0:
            out.append(XIndex(r, s, b, L))
    return out


class TestSymmetries:
    @pytest.mark.parametrize("p,pp", [(3, 5), (2, 5), (3, 4)])
    def test_flip_random(self, p, pp):
        for ix in _random_indices(p * 100 + pp, p, pp):
            assert flip_symmetry_check(ModelParams(p, pp), ix).ok

    @pytest.mark.parametrize("p,pp", GRID)
    def test_flip_full_grid(self, p, pp):
        m = ModelParams(p, pp)
        for s in range(1, pp):
            for b in range(1, pp):
                for L in range((s + b) % 2, 15, 2):
                    for r in range(p + 1):
                        assert flip_symmetry_check(m, XIndex(r, s, b, L)).ok

    @pytest.mark.parametrize("p,pp", GRID)
    def test_dual_full_grid(self, p, pp):
        m = ModelParams(p, pp)
        for s in range(1, pp):
            for b in range(1, pp):
                for r in range(max(0, b - (pp - p)), min(p, b) + 1):
                    for L in range((s + b) % 2, 15, 2):
                        rep = dual_symmetry_check(m, XIndex(r, s, b, L))
                        assert rep.ok, rep.record()

    def test_dual_links_closed_forms(self):
        # (1,3) and (2,3) are dual to each other
        for l in (0, 1):
            for L in range(l, 9, 2):
                assert dual_symmetry_check(ModelParams(1, 3), XIndex(0, l + 1, 1, L)).ok
                assert dual_symmetry_check(ModelParams(2, 3), XIndex(0, l + 1, 1, L)).ok

    def test_dual_trivial_length(self):
        for s in range(1, 5):
            rep = dual_symmetry_check(ModelParams(2, 5), XIndex(1, s, s, 0))
            assert rep.ok
            assert X(2, 5, 1, s, 0, s) == QSeries.one()

    @pytest.mark.parametrize("p,pp", GRID)
    def test_rzero_full_grid(self, p, pp):
        for s in range(1, pp):
            for L in range((s + 1) % 2, 15, 2):
                assert rzero_check(ModelParams(p, pp), s, L).ok

    def test_rzero_at_minimal_length(self):
        for s in range(1, 5):
            L = s - 1
            assert rzero_check(ModelParams(2, 5), s, L).ok
            assert X(2, 5, 0, s, L, 1).valuation == 0
