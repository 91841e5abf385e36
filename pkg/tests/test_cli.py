import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qbailey import cli
from qbailey.configsum import PreconditionError
from qbailey.series import GridError, QSeries


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class TestCompute:
    def test_level_one_string_function(self):
        code, text = run("compute", "stringfunc", "--p", "1", "--pp", "3", "--m", "2", "--l", "0", "--order", "8")
        assert code == 0
        rec = records(text)[0]
        assert rec["order"] == "8"
        # q * (partition numbers)
        assert rec["terms"] == [["1", 1], ["2", 1], ["3", 2], ["4", 3], ["5", 5], ["6", 7], ["7", 11]]

    def test_configuration_sum_is_exact(self):
        code, text = run("compute", "configsum", "--p", "2", "--pp", "5", "--r", "0", "--s", "2", "--b", "1", "--L", "7")
        assert code == 0
        rec = records(text)[0]
        assert rec["order"] == "exact"
        assert [c for _, c in rec["terms"]] == [1, 1, 1, 1, 2, 2, 2, 1, 1, 1]
        assert rec["terms"][0][0] == "3"

    def test_parity_error(self, capsys):
        code, text = run("compute", "configsum", "--p", "2", "--pp", "5", "--r", "0", "--s", "2", "--b", "2", "--L", "7")
        assert code == 2 and text == ""
        assert "L+s+b even" in capsys.readouterr().err

    def test_missing_flag(self, capsys):
        code, _ = run("compute", "stringfunc", "--p", "1", "--pp", "3", "--m", "0")
        assert code == 2
        assert "--l" in capsys.readouterr().err

    def test_human_format(self):
        code, text = run("compute", "fermionic-x", "--p", "3", "--pp", "5", "--r", "0", "--s", "1", "--b", "1",
                         "--L", "4", "--format", "human")
        assert code == 0
        assert text.splitlines() == ["2\t1", "4\t1"]

    def test_human_format_truncated(self):
        _, text = run("compute", "parafermion", "--p", "2", "--pp", "5", "--m", "0", "--l", "0",
                      "--order", "3", "--format", "human")
        assert text.splitlines()[-1] == "O(q^3)"

    def test_rational_order(self):
        code, text = run("compute", "stringfunc", "--p", "2", "--pp", "5", "--m", "0", "--l", "0", "--order", "7/2")
        assert code == 0 and records(text)[0]["order"] == "7/2"

    def test_bad_grid_denominator(self, capsys):
        code, _ = run("compute", "stringfunc", "--p", "1", "--pp", "3", "--m", "0", "--l", "0", "--denom", "0")
        assert code == 2
        assert "denominator" in capsys.readouterr().err

    def test_off_grid_exponent(self):
        with pytest.raises(GridError):
            cli._on_grid(QSeries.monomial(1, Fraction(1, 2)), 1)
        assert cli._on_grid(QSeries.monomial(1, Fraction(1, 2)), 4) == [(Fraction(1, 2), 1)]

    def test_unknown_flag_outside_verify(self, capsys):
        code, _ = run("list", "--eta", "2")
        assert code == 2 and "unrecognized" in capsys.readouterr().err


class TestVerify:
    def test_rogers_ramanujan(self):
        code, text = run("verify", "rr", "--order", "200")
        assert code == 0
        rec = records(text)[0]
        assert rec["identity"] == "rr" and rec["status"] == "pass" and rec["order"] == "200"

    def test_manifest_subset(self):
        code, text = run("verify", "cbp-cor42", "--manifest", "grid", "--parallel", "2")
        assert code == 0
        recs = records(text)
        assert len(recs) > 10
        assert {r["identity"] for r in recs} == {"conjugate-pair:cbp-cor42"}
        assert all(r["status"] == "pass" for r in recs)

    def test_extra_parameters(self):
        code, text = run("verify", "lemma43", "--alpha", "1", "--beta", "2", "--order", "20")
        assert code == 0
        assert records(text)[0]["params"] == {"alpha": 1, "beta": 2}

    def test_bfid(self):
        code, text = run("verify", "bfid", "--p1", "2", "--pp1", "3", "--p2", "1", "--pp2", "3",
                         "--b", "1", "--s", "1", "--l", "0", "--order", "20")
        assert code == 0 and records(text)[0]["status"] == "pass"

    def test_unknown_identity(self, capsys):
        code, _ = run("verify", "nope")
        assert code == 2 and "unknown identity" in capsys.readouterr().err

    def test_missing_parameter_reported(self):
        code, text = run("verify", "lemma43", "--alpha", "1")
        assert code == 2
        assert records(text)[0]["status"] == "precondition"

    def test_manifest_file(self, tmp_path):
        doc = {"entries": [{"identity": "bailey-pair", "order": "20",
                            "params": [{"pair": "rogers"}, {"pair": "initial"}]}]}
        path = tmp_path / "m.json"
        path.write_text(json.dumps(doc))
        code, text = run("verify", "all", "--manifest", str(path))
        assert code == 0 and len(records(text)) == 2

    def test_exit_codes(self):
        from qbailey.report import timed_report
        from qbailey.series import equal_to_order
        good = timed_report("t", {}, 4, lambda: equal_to_order(QSeries.one(), QSeries.one(), 4))
        bad = timed_report("t", {}, 4, lambda: equal_to_order(QSeries.one(), QSeries.zero(), 4))
        assert cli._report_exit([good, good]) == 0
        assert cli._report_exit([good, bad]) == 1

    def test_deterministic_across_workers(self, tmp_path):
        doc = {"entries": [{"identity": "lemma43", "order": "15",
                            "params": [{"alpha": a, "beta": b} for a in range(3) for b in range(3)]}]}
        path = tmp_path / "m.json"
        path.write_text(json.dumps(doc))

        def stripped(parallel):
            _, text = run("verify", "all", "--manifest", str(path), "--parallel", str(parallel))
            recs = records(text)
            for r in recs:
                r.pop("millis")
            return recs

        assert stripped(1) == stripped(3)

    def test_human_report(self):
        code, text = run("verify", "lemma43", "--alpha", "0", "--beta", "1", "--order", "10", "--format", "human")
        assert code == 0
        assert text.split()[0] == "pass" and "order=10" in text

    def test_manifest_without_identity(self, capsys):
        code, _ = run("verify", "no-such-identity", "--manifest", "grid")
        assert code == 2 and "no entries" in capsys.readouterr().err


class TestOracle:
    def test_paths(self):
        code, text = run("oracle", "paths", "--p", "3", "--pp", "5", "--s", "2", "--b", "1", "--c", "2", "--L", "12")
        assert code == 0 and records(text)[0]["status"] == "pass"

    def test_hooks(self):
        code, text = run("oracle", "hooks", "--p", "3", "--pp", "5", "--r", "1", "--s", "2", "--b", "2", "--L", "8")
        assert code == 0 and records(text)[0]["status"] == "pass"

    def test_partitions(self):
        code, text = run("oracle", "partitions", "--modulus", "5", "--residues", "2,3", "--order", "30")
        assert code == 0 and records(text)[0]["status"] == "pass"

    def test_oversized_length_is_a_budget_error(self):
        code, text = run("oracle", "paths", "--p", "5", "--pp", "8", "--s", "3", "--b", "3", "--c", "4", "--L", "80")
        assert code == 2
        assert records(text)[0]["status"] == "budget-exceeded"


class TestList:
    def test_lists_every_identity(self):
        from qbailey.verify import REGISTRY
        code, text = run("list")
        assert code == 0
        assert [r["identity"] for r in records(text)] == sorted(REGISTRY)

    def test_human(self):
        _, text = run("list", "--format", "human")
        assert "rr" in text.split()


class TestRunConfig:
    @pytest.mark.parametrize("kw", [{"order": 0}, {"order": -3}, {"order": 5, "denom": 0},
                                    {"order": 5, "window": 0}])
    def test_rejects(self, kw):
        with pytest.raises(PreconditionError):
            cli.RunConfig(**kw)

    def test_env_overrides(self, monkeypatch):
        # setenv first so that teardown restores whatever was there before
        monkeypatch.setenv("QBAILEY_WINDOW", "3")
        monkeypatch.setenv("QBAILEY_BUDGET", "4000")
        cli.RunConfig(10, window=7, budget=900).apply_env()
        import os
        assert os.environ["QBAILEY_WINDOW"] == "7" and os.environ["QBAILEY_BUDGET"] == "900"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qbailey", "verify", "lemma43", "--alpha", "1", "--beta", "1",
                           "--order", "12"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
