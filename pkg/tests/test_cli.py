import json
import os
import subprocess
import sys

import pytest

from bidiff.cli import main
from bidiff.output import poly_from_json
from bidiff.parsing import parse_poly
from bidiff.poly import VarSpace


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_symbol_rank1_text(capsys):
    code, out, _ = run_cli(capsys, "symbol", "rank1", "1", "rodrigues", "--format=text")
    assert code == 0
    space = VarSpace(("xi", 1), ("zeta", 1))
    assert parse_poly(out.strip(), space) == parse_poly("(s+1)*zeta1 - (t+1)*xi1", space)


def test_symbol_k0(capsys):
    code, out, _ = run_cli(capsys, "symbol", "rank1", "0", "rodrigues")
    assert code == 0
    assert out.strip() == "1"


def test_symbol_matrix2_source_unsupported(capsys):
    code, _, err = run_cli(capsys, "symbol", "matrix2", "1", "source")
    assert code == 2
    assert "source route unsupported for matrix2" in err


def test_symbol_bad_algebra(capsys):
    code, _, err = run_cli(capsys, "symbol", "rank7", "1", "rodrigues")
    assert code == 2
    assert "rank7" in err


def test_symbol_negative_k(capsys):
    code, _, err = run_cli(capsys, "symbol", "rank1", "-1", "rodrigues")
    assert code == 2


def test_apply_examples(capsys):
    code, out, _ = run_cli(
        capsys, "apply", "rank1", "1", "--lambda=lambda", "--mu=mu", "x1", "1"
    )
    assert code == 0
    assert out.strip() == "-mu"
    code, out, _ = run_cli(
        capsys, "apply", "rank1", "1", "--lambda=2", "--mu=3", "x1", "x1"
    )
    assert code == 0
    assert out.strip() == "-x1"


def test_apply_parse_failure_is_exit_2(capsys):
    code, _, err = run_cli(capsys, "apply", "rank1", "1", "x1 +", "1")
    assert code == 2
    assert "position" in err


def test_symbol_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "symbol", "quadratic:2", "1", "recurrence", "--format=json")
    assert code == 0
    p = poly_from_json(out)
    from bidiff.engine import recurrence_c
    from bidiff.jordan import JordanAlgebraSpec

    assert p == recurrence_c(JordanAlgebraSpec.quadratic(2), 1).value


def test_symbol_latex(capsys):
    code, out, _ = run_cli(capsys, "symbol", "rank1", "1", "rodrigues", "--format=latex")
    assert code == 0
    assert "\\xi_{1}" in out and "\\zeta_{1}" in out


def test_symbol_numeric_parameters(capsys):
    code, out, _ = run_cli(
        capsys, "symbol", "rank1", "1", "rodrigues", "--lambda=2", "--mu=1/2"
    )
    assert code == 0
    space = VarSpace(("xi", 1), ("zeta", 1))
    # b symbol at lambda=2, mu=1/2: lambda zeta - mu xi
    assert parse_poly(out.strip(), space) == parse_poly("2*zeta1 - 1/2*xi1", space)


def test_symbol_source_route_symbolic(capsys):
    code, out, _ = run_cli(capsys, "symbol", "rank1", "1", "source")
    assert code == 0
    space = VarSpace(("xi", 1), ("zeta", 1))
    assert parse_poly(out.strip(), space) == parse_poly(
        "i*(lambda*zeta1 - mu*xi1)", space
    )


def test_output_determinism(capsys):
    a = run_cli(capsys, "symbol", "quadratic:2", "2", "rodrigues", "--format=json")
    b = run_cli(capsys, "symbol", "quadratic:2", "2", "rodrigues", "--format=json")
    assert a == b


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "bidiff.cfg"
    cfg.write_text("algebra = rank1\nformat = json\n")
    code, out, _ = run_cli(capsys, "--config", str(cfg), "symbol", "-", "1", "rodrigues")
    assert code == 0
    doc = json.loads(out)
    assert doc["vars"] == ["xi1", "zeta1"]


def test_config_missing_algebra(tmp_path, capsys):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("format = text\n")
    code, _, err = run_cli(capsys, "--config", str(cfg), "symbol", "-", "1", "rodrigues")
    assert code == 2


def test_verify_trivial_base_cases(capsys):
    code, out, _ = run_cli(capsys, "verify", "jacobi", "--max-k=0")
    assert code == 0
    assert "PASS" in out


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_verify_rc_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "rc", "--max-k=3")
    assert code == 0
    assert "i^k" in out or "unit factor" in out


def test_cache_env_disables_memo(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BIDIFF_NO_CACHE", "1")
    code, out1, _ = run_cli(capsys, "symbol", "rank1", "2", "rodrigues")
    monkeypatch.delenv("BIDIFF_NO_CACHE")
    code2, out2, _ = run_cli(capsys, "symbol", "rank1", "2", "rodrigues")
    assert code == code2 == 0
    assert out1 == out2


def test_verify_failure_exits_1(capsys, monkeypatch):
    import bidiff.cli as cli
    from bidiff.report import CheckResult

    def fake_run(name, max_k=None, seed=0):
        return [CheckResult("stub identity", False, detail="k=1")], ()

    monkeypatch.setattr(cli, "run_suites", fake_run)
    code, out, _ = run_cli(capsys, "verify", "rc")
    assert code == 1
    assert "FAIL" in out and "k=1" in out


def test_divisibility_violation_exits_3(capsys, monkeypatch):
    import bidiff.cli as cli
    from bidiff.errors import DivisibilityViolation

    def boom(J, k):
        raise DivisibilityViolation("forced remainder")

    monkeypatch.setattr(cli, "rodrigues_c", boom)
    code, _, err = run_cli(capsys, "symbol", "rank1", "2", "rodrigues")
    assert code == 3
    assert "divisibility" in err.lower()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bidiff", "symbol", "rank1", "0", "recurrence"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1"
