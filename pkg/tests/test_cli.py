"""Command-line surface: outputs, formats, and the exit-code contract."""

import csv
import io
import json
from contextlib import redirect_stdout

import pytest

from etaparity.cli import main


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


class TestExpand:
    def test_delta(self):
        code, out = run_cli("expand", "delta", "--coeffs", "30")
        assert code == 0 and out.strip() == "1 9 25"

    def test_eta_power_progression(self):
        code, out = run_cli("expand", "P:18", "--coeffs", "200")
        exps = [int(x) for x in out.split()]
        assert code == 0 and all(e % 4 == 3 for e in exps)

    def test_alpha_json(self):
        code, out = run_cli("expand", "alpha:17", "--coeffs", "100",
                            "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["support"] == [17, 41, 89]

    def test_unknown_form(self):
        code, _ = run_cli("expand", "nonsense")
        assert code == 2


class TestDensity:
    def test_single_r_text(self):
        code, out = run_cli("density", "--r", "9", "--prime-bound", "20000")
        assert code == 0
        assert "exact=1/4" in out

    def test_csv_output(self, tmp_path):
        out_path = tmp_path / "report.csv"
        code, _ = run_cli("density", "--r", "18,24", "--prime-bound", "20000",
                          "--format", "csv", "--out", str(out_path))
        assert code == 0
        with open(out_path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4  # two routes per r
        by_key = {(r["r"], r["route"]): r for r in rows}
        assert by_key[("18", "direct")]["exact"] == "1/4"
        assert by_key[("24", "direct")]["exact"] == "0"

    def test_range_json_threads(self):
        code, out = run_cli("density", "--r", "1..4", "--prime-bound", "5000",
                            "--format", "json", "--threads", "2")
        data = json.loads(out)
        assert code == 0 and len(data) == 8

    def test_bad_r(self):
        code, _ = run_cli("density", "--r", "0", "--prime-bound", "1000")
        assert code == 2


class TestVerify:
    def test_fast_suite(self):
        code, out = run_cli("verify", "--suite", "combinatorial")
        data = json.loads(out)
        assert code == 0 and data["passed"] is True

    def test_bounded_suite_accepts_prime_bound(self):
        code, out = run_cli("verify", "--suite", "bounds",
                            "--prime-bound", "20000")
        data = json.loads(out)
        assert code == 0 and data["suite"] == "bounds"

    def test_unknown_suite(self):
        code, _ = run_cli("verify", "--suite", "nope")
        assert code == 2

    def test_failing_suite_exits_one(self, monkeypatch):
        from etaparity import suites as suite_mod

        def broken():
            res = suite_mod.SuiteResult("combinatorial")
            res.add("forced failure", False)
            return res

        monkeypatch.setitem(suite_mod.SUITES, "combinatorial", broken)
        code, out = run_cli("verify", "--suite", "combinatorial")
        assert code == 1 and json.loads(out)["passed"] is False


class TestWalk:
    def test_writes_rows(self, tmp_path):
        out_path = tmp_path / "w.csv"
        code, out = run_cli("walk", "--kind", "all", "--n", "10",
                            "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().strip().splitlines()
        assert len(lines) == 11
        assert lines[-1].split(",")[2] == "-2"

    def test_delta_subseq(self, tmp_path):
        out_path = tmp_path / "w.csv"
        code, _ = run_cli("walk", "--kind", "delta-subseq", "--n", "3",
                          "--out", str(out_path))
        lines = out_path.read_text().strip().splitlines()
        assert code == 0 and lines[-1].split(",")[2] == "-3"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["density"])  # --r is required
    assert exc.value.code == 2
