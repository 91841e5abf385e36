import json
from fractions import Fraction

import pytest

from qbailey import verify as vf
from qbailey.configsum import PreconditionError, X
from qbailey.qtools import mono
from qbailey.report import BUDGET, FAIL, PASS, IdentityReport, timed_report
from qbailey.series import INF, BudgetExceeded, QSeries, equal_to_order
from qbailey.stringfunc import string_fn


def passes(report):
    assert report.ok, report.record()
    return True


class TestReports:
    def test_fail_carries_mismatch(self):
        rep = timed_report("t", {}, 6, lambda: equal_to_order(QSeries.one(), QSeries.one() + QSeries.monomial(1, 5), 6))
        assert rep.status == FAIL
        assert rep.record()["mismatch"] == {"exponent": "5", "lhs": 0, "rhs": 1}

    def test_pass_has_no_mismatch(self):
        rep = timed_report("t", {}, 6, lambda: equal_to_order(QSeries.one(), QSeries.one(), 6))
        assert rep.status == PASS and "mismatch" not in rep.record()

    def test_first_failing_part_decides(self):
        good = equal_to_order(QSeries.one(), QSeries.one(), 5)
        bad = equal_to_order(QSeries.zero(), QSeries.monomial(3, 2), 5)
        rep = timed_report("t", {}, 5, lambda: [("a", good), ("b", bad)])
        assert rep.status == FAIL and rep.mismatch.exponent == 2

    def test_budget_status(self):
        def run():
            raise BudgetExceeded("too many shells")
        rep = timed_report("t", {"x": Fraction(2)}, 5, run)
        assert rep.status == BUDGET
        assert rep.record()["params"] == {"x": 2}

    def test_record_fields(self):
        rec = vf.check_lemma43(1, 2, 10).record()
        assert list(rec) == ["identity", "params", "order", "status", "millis"]


class TestSmallChecks:
    def test_rogers_ramanujan(self):
        assert passes(vf.check_rr(200))

    def test_transform_regression(self):
        assert passes(vf.check_iter2_regression(20, 60))

    @pytest.mark.parametrize("a,b", [(1, 2), (0, 1), (3, 0)])
    def test_two_parameter_lemma(self, a, b):
        assert passes(vf.check_lemma43(a, b, 30))

    def test_two_parameter_lemma_symmetric_case(self):
        rep = vf.check_lemma43(2, 2, 30)
        assert passes(rep)
        assert "vanishes" in rep.parts

    @pytest.mark.parametrize("identity,params", [
        ("qcv", {}), ("heine", {"m": 0}), ("heine", {"m": 3}), ("qktw", {"r": 1, "m": 0}),
        ("qktw", {"r": 2, "m": 1}), ("qbinthm", {"n": 6, "a": "-q^2"}), ("xq", {"x": "q"})])
    def test_classical(self, identity, params):
        assert passes(vf.check_classical(identity, params, 30))

    def test_classical_divergent_parameters(self):
        with pytest.raises(PreconditionError):
            vf.check_classical("heine", {"a": "q^2", "b": "q^3", "c": "q^4", "z": "q^-5"}, 20)

    def test_classical_unknown(self):
        with pytest.raises(PreconditionError):
            vf.check_classical("gauss", {}, 20)

    def test_euler_classical(self):
        rep = vf.check_euler_generalized(1, 3, 0, 0, 40)
        assert passes(rep)

    @pytest.mark.parametrize("l,eta,value", [(0, 0, 1), (0, 2, 0), (1, 1, 1), (1, 3, 0)])
    def test_euler_values(self, l, eta, value):
        x = vf.bilateral_euler_sum(2, 5, l, eta, 40)
        assert equal_to_order(x, QSeries.one(40).scale(value), 40)

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_level_half(self, m):
        assert passes(vf.check_level_half_props(m, 30, 8))

    @pytest.mark.parametrize("m", [0, 2])
    def test_ising(self, m):
        assert passes(vf.check_ising_props(m, 30, 8, 6))

    @pytest.mark.parametrize("m", [0, 2, 8])
    def test_fermionic_string_sum(self, m):
        assert passes(vf.check_corCF(3, 5, m, 0, "CF", 25))

    def test_fermionic_string_sum_second_route(self):
        assert passes(vf.check_corCF(3, 4, 1, 1, "CF2", 25))

    def test_branching_cancellation(self):
        # at s = 0 the two string functions in every summand coincide
        assert vf.branching_fn(1, 3, 2, 5, 1, 1, 0, 15).is_zero()
        assert not vf.branching_fn(1, 3, 2, 5, 1, 0, 1, 15).is_zero()

    def test_bfid_small(self):
        assert passes(vf.check_bfid(2, 3, 1, 3, 1, 1, 0, 20))

    def test_bfid_fermionic_mode_agrees(self):
        a = vf.bfid_rhs(3, 5, 1, 3, 2, 1, 1, 20)
        b = vf.bfid_rhs(3, 5, 1, 3, 2, 1, 1, 20, fermionic=True)
        assert equal_to_order(a, b, 20)

    def test_rrppp_rogers_ramanujan(self):
        assert passes(vf.check_rrppp(1, 3, 0, 1, 2, 2, 35))

    def test_rrppp_ising(self):
        assert passes(vf.check_rrppp(3, 4, 0, 0, 2, 1, 30))

    def test_string_forms(self):
        assert passes(vf.check_string_forms(2, 5, 2, 0, 20))

    def test_string_forms_wrong_parity(self):
        with pytest.raises(PreconditionError):
            vf.check_string_forms(2, 5, 1, 0, 20)

    def test_higher_level_vs_configuration_pairs(self):
        assert passes(vf.check_higher_level_vs_cor42(2, 0, 0, 0, 3, 20))

    def test_special_pairs(self):
        assert passes(vf.check_special_pairs(2, 3, 0, 0, 4, 25))

    def test_duality_swap(self):
        assert passes(vf.check_duality_swap(1, 3, 2, 5, 1, 0, 4, 25))


class TestParsing:
    @pytest.mark.parametrize("text,sign,exp", [("q^2", 1, 2), ("-q^3", -1, 3), ("q", 1, 1), ("1", 1, 0),
                                               ("-1", -1, 0), ("q^(1/2)", 1, Fraction(1, 2)), ("q^-1", 1, -1)])
    def test_monomials(self, text, sign, exp):
        m = vf.parse_monomial(text)
        assert (m.sign, m.exponent) == (sign, exp)

    @pytest.mark.parametrize("text", ["0", "inf"])
    def test_limits(self, text):
        assert vf.parse_monomial(text) is None

    def test_orders(self):
        assert vf.parse_order("30") == 30
        assert vf.parse_order("7/2") == Fraction(7, 2)
        assert vf.parse_order("exact") == INF
        with pytest.raises(PreconditionError):
            vf.parse_order("0")


class TestRegistry:
    def test_every_identity_has_a_description(self):
        for name, check in vf.REGISTRY.items():
            assert check.description and "eq" not in check.description.lower().split()

    def test_unknown_identity(self):
        with pytest.raises(PreconditionError):
            vf.run_check("nope", {})

    def test_missing_parameter_is_a_precondition_report(self):
        rep = vf.run_entries([("lemma43", {"alpha": 1}, None)])[0]
        assert rep.status == "precondition" and "beta" in rep.detail

    def test_run_check_default_order(self):
        rep = vf.run_check("lemma43", {"alpha": 0, "beta": 1})
        assert rep.ok and rep.order == 35

    def test_parallel_keeps_order(self):
        jobs = [("lemma43", {"alpha": a, "beta": b}, 15) for a in range(3) for b in range(3)]
        serial = [r.record()["params"] for r in vf.run_entries(jobs, 1)]
        parallel = [r.record()["params"] for r in vf.run_entries(jobs, 3)]
        assert serial == parallel == [j[1] for j in jobs]

    def test_manifest_by_name(self):
        jobs = vf.load_manifest("grid")
        names = {j[0] for j in jobs}
        assert set(vf.REGISTRY) - names <= {"oracle-paths", "oracle-hooks"}

    def test_manifest_from_file(self, tmp_path):
        doc = {"entries": [{"identity": "lemma43", "order": "12", "params": [{"alpha": 1, "beta": 3}]}]}
        path = tmp_path / "m.json"
        path.write_text(json.dumps(doc))
        jobs = vf.load_manifest(str(path))
        assert jobs == [("lemma43", {"alpha": 1, "beta": 3}, 12)]
        assert vf.run_entries(jobs)[0].ok

    def test_manifest_missing(self):
        with pytest.raises(PreconditionError):
            vf.load_manifest("no-such-manifest")
