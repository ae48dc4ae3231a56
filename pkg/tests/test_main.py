import json
from fractions import Fraction

import pytest

from main import EXIT_OK, EXIT_USAGE, run
from models.schemas import AnalysisReport, BoundName
from tests.conftest import RUNNING_EXAMPLE_TEXT, SYSTEM_A_TEXT
from utils.file_handler import parse_function, parse_maxlin


@pytest.fixture
def function_file(tmp_path):
    path = tmp_path / "running.pbf"
    path.write_text(RUNNING_EXAMPLE_TEXT)
    return str(path)


@pytest.fixture
def system_file(tmp_path):
    path = tmp_path / "system_a.mla"
    path.write_text(SYSTEM_A_TEXT)
    return str(path)


def test_analyze_json(function_file, capsys):
    assert run(["analyze", function_file, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["degree"] == 2
    assert payload["width"] == 2
    assert payload["second_moment"] == "14"
    assert payload["moments"][1] == {"r": 2, "value": "392"}
    width42 = next(b for b in payload["bounds"] if b["name"] == "width42")
    assert width42["rhs"] == "2156/3"
    assert width42["holds"] and not width42["tight"]
    assert payload["tightness"]["width2r:r=2"] is False


def test_analyze_json_parses_back(function_file, capsys):
    run(["analyze", function_file, "--json", "--moments", "1,2,3"])
    report = AnalysisReport.parse_raw(capsys.readouterr().out)
    assert report.second_moment == Fraction(14)
    assert [m.r for m in report.moments] == [1, 2, 3]
    width42 = next(b for b in report.bounds if b.name == BoundName.WIDTH42)
    assert width42.rhs == Fraction(2156, 3)
    corollary = next(b for b in report.bounds if b.name == BoundName.COROLLARY)
    assert isinstance(corollary.lhs, float)


def test_analyze_output_is_deterministic(function_file, capsys):
    run(["analyze", function_file, "--json"])
    first = capsys.readouterr().out
    run(["analyze", function_file, "--json"])
    assert capsys.readouterr().out == first


def test_analyze_text(function_file, capsys):
    assert run(["analyze", function_file, "--norms", "2,3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "E[f^4]         392" in out
    assert "[width42] lhs 392 <= rhs 2156/3: holds" in out


def test_analyze_missing_file(tmp_path):
    assert run(["analyze", str(tmp_path / "missing.pbf")]) == EXIT_USAGE


def test_analyze_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.pbf"
    path.write_text("n 2\n1 1 2\n3 2 1\n")
    assert run(["analyze", str(path)]) == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err


def test_bound_width42(capsys):
    assert run(["bound", "--width42", "1", "4", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["exact"] == "5/2"
    assert payload["value"] == pytest.approx(2.5 ** 0.25)


def test_bound_width2r_refined(capsys):
    assert run(["bound", "--width2r", "3", "1", "--refined", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["exact"] == "600"
    assert payload["name"] == "refined2r"


def test_bound_usage_errors():
    assert run(["bound"]) == EXIT_USAGE
    assert run(["bound", "--classical", "2", "4", "1"]) == EXIT_USAGE
    assert run(["bound", "--width42", "1", "0"]) == EXIT_USAGE


def test_verify_theorem1(capsys):
    assert run(["verify", "theorem1", "--trials", "1000", "--nmax", "10", "--mmax", "32", "--seed", "7"]) == EXIT_OK
    assert "violations  0" in capsys.readouterr().out


def test_verify_maxlin_json(capsys):
    assert run(["verify", "maxlin", "--trials", "50", "--nmax", "8", "--mmax", "16", "--seed", "2", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["suite"] == "maxlin"
    assert payload["violations"] == 0


def test_maxlin_kernel(system_file, capsys):
    assert run(["maxlin", "kernel", system_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS_THROUGH" in out
    assert "= 80" in out


def test_maxlin_solve_and_check(system_file, capsys):
    assert run(["maxlin", "solve", system_file, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["max_weight"] == 2
    assert payload["witness"] == [1, 1, 1]
    assert run(["maxlin", "check", system_file]) == EXIT_OK


def test_examples_to_file(tmp_path):
    out = tmp_path / "affine.pbf"
    assert run(["examples", "affine", "--n", "3", "--out", str(out)]) == EXIT_OK
    f = parse_function(out.read_text())
    assert f.m == 4
    assert f.n == 3


def test_examples_to_stdout(capsys):
    assert run(["examples", "full", "--n", "2"]) == EXIT_OK
    assert parse_function(capsys.readouterr().out).m == 4


def test_scan_csv(capsys):
    assert run(["scan", "--family", "affine", "--nmax", "2", "--rmax", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "family,n,r,rho,ratio,reference,implied_c"
    assert len(lines) == 5
    assert float(lines[-1].split(",")[4]) == pytest.approx((21 / 9) ** 0.25)


def test_help_exits_cleanly():
    assert run(["--help"]) == EXIT_OK


def test_analyze_reports_prior_bound(function_file, capsys):
    assert run(["analyze", function_file, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    prior = next(b for b in payload["bounds"] if b["name"] == "prior42")
    assert prior["rhs"] == "1568"
    assert prior["holds"]


def test_analyze_invalid_utf8(tmp_path, capsys):
    path = tmp_path / "latin.pbf"
    path.write_bytes(b"n 2\n1 1\n\xff 2\n")
    assert run(["analyze", str(path)]) == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err


def test_bound_prior42(capsys):
    assert run(["bound", "--prior42", "2", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["name"] == "prior42"
    assert payload["exact"] == "8"
    assert run(["bound", "--prior42", "1"]) == EXIT_USAGE


def test_verify_argument_errors_exit_usage():
    assert run(["verify", "corollary", "--q", "2", "--p", "4"]) == EXIT_USAGE
    assert run(["verify", "corollary", "--q", "4"]) == EXIT_USAGE
    assert run(["verify", "theorem2", "--r", "0"]) == EXIT_USAGE
    assert run(["verify", "corollary", "--nmax", "40"]) == EXIT_USAGE
    assert run(["verify", "maxlin", "--nmax", "30"]) == EXIT_USAGE
    assert run(["verify", "theorem1", "--nmax", "64"]) == EXIT_USAGE


def test_verify_theorem2_fixed_order(capsys):
    argv = ["verify", "theorem2", "--r", "2", "--trials", "20", "--nmax", "6", "--mmax", "8", "--seed", "1", "--json"]
    assert run(argv) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"]["r2"] == 20
    assert "r1" not in payload["counts"]


def test_verify_corollary_exponent_pair(capsys):
    argv = ["verify", "corollary", "--q", "6", "--p", "4", "--trials", "10", "--nmax", "6", "--mmax", "8", "--json"]
    assert run(argv) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"]["pairs"] == 10
    assert payload["violations"] == 0


def test_verify_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("PBF_SEED", "13")
    argv = ["verify", "theorem1", "--trials", "5", "--nmax", "4", "--mmax", "4", "--json"]
    assert run(argv) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["seed"] == 13
    assert run(argv + ["--seed", "4"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["seed"] == 4


def test_dense_cap_flag_overrides_environment(monkeypatch, capsys):
    monkeypatch.setenv("PBF_DENSE_CAP", "2")
    assert run(["examples", "full", "--n", "3"]) == EXIT_USAGE
    capsys.readouterr()
    assert run(["--dense-cap", "5", "examples", "full", "--n", "3"]) == EXIT_OK
    assert parse_function(capsys.readouterr().out).m == 8


def test_maxlin_kernel_large_k(tmp_path, capsys):
    path = tmp_path / "big_k.mla"
    path.write_text("maxlin 1 1 32\n222 1 1\n")
    out = tmp_path / "kernel.mla"
    assert run(["maxlin", "kernel", str(path), "--out", str(out)]) == EXIT_OK
    assert "YES_BY_BOUND" in capsys.readouterr().out
    kernel = parse_maxlin(out.read_text())
    assert kernel.m == 64
    assert kernel.k == 32


def test_maxlin_kernel_writes_pass_through_system(system_file, tmp_path):
    out = tmp_path / "kernel.mla"
    assert run(["maxlin", "kernel", system_file, "--out", str(out)]) == EXIT_OK
    assert out.read_text() == SYSTEM_A_TEXT
