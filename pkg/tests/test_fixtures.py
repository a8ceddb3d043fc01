"""Tests for the fixture registry and the built-in worked examples."""

import pytest

from engine.analysis import analyze
from engine.fixtures import create_example1_fixture, register_builtin_fixtures
from engine.registry import FIXTURES, Fixture, get_fixture, is_fixture, list_fixtures, register_fixture


@pytest.fixture(autouse=True)
def builtin_fixtures() -> None:
    register_builtin_fixtures()


# =============================================================================
# Registry
# =============================================================================


def test_builtin_fixtures_are_registered() -> None:
    assert list_fixtures() == ["closing", "example1", "example2"]
    assert is_fixture("example2")
    assert not is_fixture("example3")


def test_registration_is_idempotent() -> None:
    register_builtin_fixtures()
    assert len(FIXTURES) == 3


def test_duplicate_registration_rejected() -> None:
    with pytest.raises(ValueError, match="already registered"):
        register_fixture(create_example1_fixture())


def test_unknown_fixture() -> None:
    with pytest.raises(KeyError):
        get_fixture("nope")


def test_fixture_reports_mismatches() -> None:
    """check() lists every expected key that differs."""
    fixture = get_fixture("example1")
    report = analyze(fixture.case, comparisons=0)
    altered = Fixture(name="altered", case=fixture.case, expected={"r": 3, "mu": [1, 3, 3]})
    assert altered.check(report) == ["altered: r = 2, expected 3"]


# =============================================================================
# Worked examples
# =============================================================================


@pytest.mark.parametrize("name", ["example1", "example2", "closing"])
def test_builtin_fixture_passes(name: str) -> None:
    fixture = get_fixture(name)
    assert fixture.check(analyze(fixture.case)) == []


def test_example2_reductions_are_compared() -> None:
    """Both supplied reductions appear in the comparison with equal tables."""
    report = analyze(get_fixture("example2").case, comparisons=0)
    rows = report.comparisons.reductions
    assert [row.reduction for row in rows] == ["t^8", "t^8 + t^57"]
    assert rows[0].f == rows[1].f == [(1, 1, 1), (1, 2, 2), (2, 1, 1)]
    assert report.comparisons.tables_agree
