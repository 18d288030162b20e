import json
import math
import os

import pytest

import app
from tools.logcomplex import LogComplex
from tools.report_exporter import (
    CSV_HEADER,
    OutputRow,
    format_number,
    generate_rows_csv,
    validate_csv_export,
    write_text_atomic,
)
from workflows.verification import check_runner


def _csv_rows(text):
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def _fit_footer(text):
    footer = [line for line in text.splitlines() if line.startswith("#fit,")]
    assert len(footer) == 1
    _, order, r2 = footer[0].split(",")
    return float(order), float(r2)


class TestReportExporter:
    """Test cases for CSV rendering"""

    def test_header_exact(self):
        """Test the header line matches the schema"""
        text = generate_rows_csv([])
        assert text.splitlines()[0] == "family,c,T,s,value_log_mag,value_arg,asym_log_mag,asym_arg,rel_err"

    def test_number_format(self):
        """Test 17 significant digits and the inf spelling"""
        assert format_number(0.1) == "0.10000000000000001"
        assert format_number(math.inf) == "inf"
        assert format_number(1e6) == "1000000"

    def test_row_and_footer(self, sample_row):
        """Test one row plus the fit footer"""
        text = generate_rows_csv([sample_row], fit=(1.02, 0.999))
        rows = _csv_rows(text)
        assert rows[0]["family"] == "I"
        assert rows[0]["T"] == "inf"
        assert float(rows[0]["rel_err"]) == 0.002
        assert _fit_footer(text) == (1.02, 0.999)
        assert validate_csv_export(text)["valid"]

    def test_validate_rejects_bad_header(self):
        """Test validation flags a wrong header"""
        result = validate_csv_export("a,b,c\n1,2,3\n")
        assert not result["valid"]
        assert result["errors"]

    def test_atomic_write(self, tmp_path):
        """Test the target appears with the full content and no temp file remains"""
        target = tmp_path / "out.csv"
        write_text_atomic(str(target), "x\n")
        assert target.read_text() == "x\n"
        assert os.listdir(tmp_path) == ["out.csv"]

    def test_atomic_write_failure_leaves_nothing(self, tmp_path, monkeypatch):
        """Test a failed rename removes the temporary file"""
        def failing_replace(src, dst):
            raise OSError("disk full")

        monkeypatch.setattr(os, "replace", failing_replace)
        with pytest.raises(OSError):
            write_text_atomic(str(tmp_path / "out.csv"), "x\n")
        assert os.listdir(tmp_path) == []


class TestEvalCommand:
    """Test cases for the eval sub-command"""

    def test_theorem_one_point(self, capsys):
        """Test eval at (c=1, T=inf, s=1000) reports rel_err ≈ 0.002"""
        code = app.main(["eval", "--family", "I", "--c", "1", "--T", "inf", "--s", "1000", "--format", "csv"])
        assert code == 0
        rows = _csv_rows(capsys.readouterr().out)
        assert float(rows[0]["rel_err"]) == pytest.approx(0.002, rel=0.05)

    def test_large_s_stays_finite(self, capsys):
        """Test eval of J at s = 1e6 prints a finite log magnitude"""
        code = app.main(["eval", "--family", "J", "--c", "1", "--T", "1", "--s", "1e6", "--format", "csv"])
        assert code == 0
        row = _csv_rows(capsys.readouterr().out)[0]
        expected = 1e6 - math.log(1e6 * abs(complex(2.0, 1.0)))
        assert float(row["value_log_mag"]) == pytest.approx(expected, abs=1e-3)
        assert float(row["asym_log_mag"]) == pytest.approx(expected, abs=1e-6)

    def test_json_format(self, capsys):
        """Test eval can emit JSON"""
        code = app.main(["eval", "--family", "J1", "--c", "1", "--T", "1", "--s", "100", "--format", "json"])
        assert code == 0
        document = json.loads(capsys.readouterr().out)
        assert list(document["rows"][0]) == CSV_HEADER

    def test_table_format(self, capsys):
        """Test the default table output"""
        assert app.main(["eval", "--family", "I1", "--c", "1", "--T", "1", "--s", "10"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith("family")

    def test_invalid_parameter(self, capsys):
        """Test c = -1 exits 2 naming the invariant"""
        code = app.main(["eval", "--family", "I", "--c", "-1", "--T", "inf", "--s", "10"])
        err = capsys.readouterr().err
        assert code == 2
        assert err.startswith("error:")
        assert "c > 0" in err
        assert len(err.strip().splitlines()) == 1

    def test_J_beyond_direct_guard(self, capsys):
        """Test J with s*T^2 above the direct-quadrature guard is evaluated through J1"""
        code = app.main(["eval", "--family", "J", "--c", "1", "--T", "2", "--s", "1000", "--format", "csv"])
        assert code == 0
        capsys.readouterr()

    def test_J_at_very_large_s(self, capsys):
        """Test eval of J at s = 1e7 succeeds with a finite log magnitude"""
        code = app.main(["eval", "--family", "J", "--c", "1", "--T", "1", "--s", "1e7", "--format", "csv"])
        assert code == 0
        row = _csv_rows(capsys.readouterr().out)[0]
        expected = 1e7 - math.log(1e7 * abs(complex(2.0, 1.0)))
        assert float(row["value_log_mag"]) == pytest.approx(expected, abs=1e-3)
        assert float(row["rel_err"]) <= 1e-6

    def test_unexpected_exception_single_line(self, monkeypatch, capsys):
        """Test an exception outside the library hierarchy still yields one error line and exit 3"""
        def broken(args):
            raise KeyError("lost")

        monkeypatch.setitem(app.COMMANDS, "eval", broken)
        code = app.main(["eval", "--family", "I", "--c", "1", "--T", "inf", "--s", "10"])
        err = capsys.readouterr().err
        assert code == 3
        assert err.startswith("error: KeyError")
        assert len(err.strip().splitlines()) == 1

    def test_bad_T_spelling(self, capsys):
        """Test an unparsable T exits 2 from the argument parser"""
        with pytest.raises(SystemExit) as excinfo:
            app.main(["eval", "--family", "I", "--c", "1", "--T", "forever", "--s", "10"])
        assert excinfo.value.code == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_bad_tolerance(self, capsys):
        """Test an out-of-range tolerance exits 2"""
        code = app.main(["eval", "--family", "J1", "--c", "1", "--T", "1", "--s", "10", "--rel-tol", "1"])
        assert code == 2
        assert "rel_tol" in capsys.readouterr().err


class TestSweepCommand:
    """Test cases for the sweep sub-command"""

    SWEEP = ["sweep", "--family", "J1", "--c", "1", "--T", "1",
             "--s-min", "32", "--s-max", "16384", "--points", "10"]

    def test_fitted_order_footer(self, tmp_path, capsys):
        """Test the J1 sweep footer reports order in [0.85, 1.15]"""
        out = tmp_path / "j1.csv"
        assert app.main(self.SWEEP + ["--out", str(out)]) == 0
        order, r2 = _fit_footer(out.read_text())
        assert 0.85 <= order <= 1.15
        assert r2 >= 0.98
        assert "fitted_order" in capsys.readouterr().out

    def test_byte_identical_runs(self, tmp_path, capsys):
        """Test two runs with the same flags write identical bytes"""
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert app.main(self.SWEEP + ["--out", str(first)]) == 0
        assert app.main(self.SWEEP + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        capsys.readouterr()

    def test_theorem_one_sweep_decreasing(self, capsys):
        """Test the I sweep has strictly decreasing rel_err"""
        code = app.main(["sweep", "--family", "I", "--c", "1", "--T", "inf",
                         "--s-min", "32", "--s-max", "16384", "--points", "10"])
        assert code == 0
        rows = _csv_rows(capsys.readouterr().out)
        assert [row["s"] for row in rows] == [str(2 ** k) for k in range(5, 15)]
        errs = [float(row["rel_err"]) for row in rows]
        assert all(b < a for a, b in zip(errs, errs[1:]))

    def test_three_points_rejected(self, tmp_path, capsys):
        """Test points = 3 exits 2 and writes nothing"""
        out = tmp_path / "bad.csv"
        code = app.main(["sweep", "--family", "J1", "--c", "1", "--T", "1",
                         "--s-min", "32", "--s-max", "1024", "--points", "3", "--out", str(out)])
        assert code == 2
        assert not out.exists()
        assert capsys.readouterr().err.startswith("error:")


class TestCheckCommand:
    """Test cases for the check sub-command"""

    def test_unknown_suite(self, capsys):
        """Test an unknown suite exits 2 and lists valid names"""
        code = app.main(["check", "bogus"])
        err = capsys.readouterr().err
        assert code == 2
        assert "theorem1" in err and "all" in err

    def test_remark1(self, capsys):
        """Test a passing suite exits 0 and prints PASS lines"""
        code = app.main(["check", "remark1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out

    def test_broken_node_reported_as_fail(self, monkeypatch, capsys):
        """Test a node raising an unexpected exception prints FAIL and no traceback"""
        def check_broken():
            raise AttributeError("module has no attribute")

        monkeypatch.setitem(check_runner.SUITES, "remark1", [check_broken, check_runner.check_remark1])
        code = app.main(["check", "remark1"])
        captured = capsys.readouterr()
        assert code == 1
        assert "FAIL [remark1] broken: error: AttributeError" in captured.out
        assert "PASS [remark1]" in captured.out
        assert "Traceback" not in captured.err

    @pytest.mark.slow
    def test_all(self, capsys):
        """Test the full acceptance run exits 0"""
        code = app.main(["check", "all"])
        out = capsys.readouterr().out
        assert code == 0, out


@pytest.fixture
def sample_row():
    """Single output row for exporter tests"""
    return OutputRow(
        family="I",
        c=1.0,
        T=math.inf,
        s=1000.0,
        value=LogComplex(-6.905, 1.5688),
        asymptotic=LogComplex(-6.907755278982137, math.pi / 2),
        rel_err=0.002,
    )


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
