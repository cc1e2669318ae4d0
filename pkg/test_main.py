import json
import math

import pytest

from main import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from report import read_csv_table
from verify import CheckResult


def run_table(tmp_path, *argv):
    out = tmp_path / "table.csv"
    code = main([*argv, "--out", str(out)])
    assert code == EXIT_OK
    return read_csv_table(out.read_text())


def run_json(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


# ============================================================================
# FAMILY
# ============================================================================

def test_family_case_I_row_at_origin(tmp_path):
    columns, rows = run_table(tmp_path, "family", "--case", "I", "--m", "1", "--bi", "1")
    assert columns == ["x", "ReV+", "ImV+", "ReV-", "ImV-"]
    assert len(rows) == 2001
    x, re_plus, im_plus, _, _ = rows[1000]
    assert x == pytest.approx(0.0, abs=1e-12)
    assert re_plus == pytest.approx(-1.75, abs=1e-12)
    assert im_plus == pytest.approx(0.0, abs=1e-12)


def test_family_hermitian_limit_has_no_imaginary_part(tmp_path):
    _, rows = run_table(tmp_path, "family", "--m", "2", "--n", "201")
    assert all(row[2] == 0.0 and row[4] == 0.0 for row in rows)


def test_family_json_format(tmp_path):
    code, report = run_json(tmp_path, "family", "--case", "III", "--m", "1.5", "--bi", "0.5",
                            "--xmin", "-1", "--xmax", "1", "--n", "11", "--format", "json")
    assert code == EXIT_OK
    assert report["type"] == "table"
    assert len(report["rows"]) == 11


@pytest.mark.parametrize("gamma, expected", [("0.2", EXIT_OK), ("0.79", EXIT_USAGE), ("-1", EXIT_USAGE)])
def test_gamma_range(tmp_path, gamma, expected):
    assert main(["family", "--gamma", gamma, "--n", "101", "--out", str(tmp_path / "f.csv")]) == expected


def test_case_II_singular_point_is_named(tmp_path, capsys):
    code = main(["family", "--case", "II", "--bi", "0.5", "--xmin", "-1", "--xmax", "1", "--n", "3",
                 "--out", str(tmp_path / "f.csv")])
    assert code == EXIT_NUMERIC
    assert "x = 0.0" in capsys.readouterr().err


# ============================================================================
# WEIERSTRASS
# ============================================================================

def test_weierstrass_fig1(tmp_path):
    columns, rows = run_table(tmp_path, "weierstrass", "--preset", "fig1")
    assert columns == ["z", "V+R", "V-I", "|psi0|"]
    omega = math.sqrt(math.pi) * math.gamma(1.25) / math.gamma(0.75)
    assert 0.0 < rows[0][0] and rows[-1][0] < 2.0 * omega
    assert min(row[1] for row in rows) == pytest.approx(6.0 * (1.0 - 1.0 / math.sqrt(3.0)), abs=1e-6)
    nearest = min(rows, key=lambda row: abs(row[0] - omega))
    assert abs(nearest[2]) < 1e-6
    assert max(row[3] for row in rows) == pytest.approx(1.0)


def test_weierstrass_fig2_single_signed(tmp_path):
    _, rows = run_table(tmp_path, "weierstrass", "--preset", "fig2")
    assert rows[0][0] > 0.0
    assert rows[-1][0] == pytest.approx(8.0 / math.sqrt(math.sqrt(3.0)))
    assert all(row[2] > 0.0 for row in rows)


def test_weierstrass_explicit_parameters_match_preset(tmp_path):
    a = 4.0 * math.sqrt(2.0 / math.sqrt(3.0))
    _, explicit = run_table(tmp_path, "weierstrass", "--er", repr(math.sqrt(3.0)), "--a", repr(a), "--n", "101")
    _, preset = run_table(tmp_path, "weierstrass", "--preset", "fig1", "--n", "101")
    assert explicit == preset


def test_weierstrass_negative_discriminant(tmp_path, capsys):
    code = main(["weierstrass", "--er", "1", "--a", "10", "--out", str(tmp_path / "w.csv")])
    assert code == EXIT_NUMERIC
    assert "D =" in capsys.readouterr().err


def test_weierstrass_needs_parameters():
    assert main(["weierstrass"]) == EXIT_USAGE
    assert main(["weierstrass", "--er", "1"]) == EXIT_USAGE


# ============================================================================
# SPECTRUM
# ============================================================================

def test_spectrum_scarf(tmp_path):
    code, report = run_json(tmp_path, "spectrum", "--case", "I", "--m", "2", "--bi", "0.5")
    assert code == EXIT_OK
    assert report["type"] == "spectrum"
    assert report["family"]["m"] == 2.0
    assert report["predicted"] == [-2.25, -0.25]
    assert [E for E, _ in report["found"]] == pytest.approx([-2.25, -0.25], abs=1e-4)
    assert report["max_abs_error"] < 1e-4


def test_spectrum_shallow_level(tmp_path):
    code, report = run_json(tmp_path, "spectrum", "--m", "0.6")
    assert code == EXIT_OK
    assert report["predicted"] == pytest.approx([-0.01])
    assert report["max_abs_error"] < 1e-4


def test_spectrum_without_bound_levels(tmp_path):
    code, report = run_json(tmp_path, "spectrum", "--m", "0.4")
    assert code == EXIT_OK
    assert report["predicted"] == []
    assert report["found"] == []
    assert report["max_abs_error"] == 0.0


def test_spectrum_missing_level_fails(tmp_path):
    code, report = run_json(tmp_path, "spectrum", "--m", "2", "--bi", "0.5", "--emin", "-1", "--emax", "-0.01")
    assert code == EXIT_NUMERIC
    assert [E for E, _ in report["found"]] == pytest.approx([-0.25], abs=1e-4)


# ============================================================================
# VERIFY
# ============================================================================

def test_verify_passes(capsys):
    assert main(["verify"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("[PASS]") >= 15
    assert "[FAIL]" not in out


def test_verify_perturbed_json(tmp_path):
    code, report = run_json(tmp_path, "verify", "--json", "--perturb", "1e-2")
    assert code == EXIT_VERIFY_FAILED
    assert report["type"] == "verify"
    assert len(report["checks"]) == report["passed"] + report["failed"]
    failed = {check["name"] for check in report["checks"] if not check["passed"]}
    assert {"constraint_case_I", "constraint_case_II", "constraint_case_III"} <= failed


# ============================================================================
# USAGE AND OUTPUT ERRORS
# ============================================================================

@pytest.mark.parametrize("argv", [[], ["bogus"], ["family", "--nope"], ["family", "--m", "abc"],
                                  ["family", "--case", "IV"], ["family", "--n", "2"]])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_unwritable_output(tmp_path):
    assert main(["family", "--n", "11", "--out", str(tmp_path / "missing" / "f.csv")]) == EXIT_NUMERIC


@pytest.mark.parametrize("extra", [[], ["--json"]])
def test_verify_unwritable_output(tmp_path, monkeypatch, extra):
    monkeypatch.setattr("main.run_checks", lambda options: [CheckResult("alpha", True, "ok")])
    target = str(tmp_path / "missing" / "verify.txt")
    assert main(["verify", *extra, "--out", target]) == EXIT_NUMERIC
    assert main(["verify", *extra, "--out", str(tmp_path / "verify.txt")]) == EXIT_OK
