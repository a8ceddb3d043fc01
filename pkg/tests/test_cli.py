"""Tests for the command-line interface and its exit codes."""

import json
from pathlib import Path

import pytest

from cli import main, parse_args
from engine import analysis
from engine.oracle import CrossCheck

CASES = Path(__file__).resolve().parent.parent / "cases"


def test_parse_args() -> None:
    args = parse_args(["-vv", "analyze", "cases/example1.yaml", "--json", "--seed", "4"])
    assert args.verbose == 2
    assert args.command == "analyze"
    assert args.json
    assert args.seed == 4
    assert args.truncation is None


def test_analyze_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["analyze", str(CASES / "example1.yaml")]) == 0
    out = capsys.readouterr().out
    assert "F(I) ≅ F(J) ⊕ F(J)(-1) ⊕ F(J)(-2) ⊕ (F(J)/aF(J))(-1)" in out


def test_analyze_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["analyze", str(CASES / "two_generated.case"), "--json", "--comparisons", "0"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["gorenstein"] is True
    assert report["type"] == 1
    assert report["comparisons"]["skipped"] is True


def test_missing_case_file_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["analyze", str(tmp_path / "absent.case")]) == 2
    assert "Error (parse)" in capsys.readouterr().err


def test_semigroup_error_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "bad.case"
    path.write_text("semigroup: 4 6\nideal: t^4\n")
    assert main(["analyze", str(path)]) == 2
    assert "Error (semigroup)" in capsys.readouterr().err


def test_no_reduction_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "bound.case"
    path.write_text("semigroup: 6 11 15 31\nideal: t^6, t^11, t^31\noption rBound=1\noption attempts=1\n")
    assert main(["analyze", str(path)]) == 3
    assert "no principal reduction found within bound" in capsys.readouterr().err


def test_truncation_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["analyze", str(CASES / "example2.yaml"), "--truncation", "10"]) == 4
    assert "Error (truncation)" in capsys.readouterr().err


def test_inconsistency_exit_code(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setattr(analysis, "cross_check", lambda *a, **k: CrossCheck(passed=False, mismatches=["forced"]))
    assert main(["analyze", str(CASES / "example1.yaml")]) == 5
    assert "Error (internal-inconsistency)" in capsys.readouterr().err


def test_sweep_needs_one_source(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["sweep"]) == 2
    assert main(["sweep", str(CASES), "--random", "count=1"]) == 2


def test_sweep_random_empty(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["sweep", "--random", "count=0", "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["counts"]["total"] == 0


def test_sweep_corpus(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["sweep", str(CASES)]) == 0
    out = capsys.readouterr().out
    assert "example2" in out
    assert "not_buchsbaum=1" in out


def test_selftest(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "PASS example1" in out
    assert "PASS example2" in out
    assert "PASS closing" in out
