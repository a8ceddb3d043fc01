"""Tests for comparing the tables of several reductions."""

import dataclasses
import random

import pytest

from engine import comparison
from engine.comparison import compare_reductions
from engine.errors import InconsistencyError
from engine.invariants import build_tables
from engine.reduction import ReductionCandidate, random_reductions, verify_reduction
from engine.subspace import IdealHandle


def primary(ideal: IdealHandle, text: str):
    candidate = verify_reduction(ideal, ideal.ctx.parse(text), r_bound=50)
    table, _ = build_tables(ideal, candidate.element, candidate.reduction_number)
    return candidate, table


def test_single_reduction_is_skipped(example1: IdealHandle) -> None:
    candidate, table = primary(example1, "t^6")
    result = compare_reductions(example1, candidate, table, [], buchsbaum=True)
    assert result.skipped
    assert result.notice == "single reduction: comparison skipped"
    assert len(result.reductions) == 1
    assert result.verdict == "skipped; Buchsbaum"


def test_example1_random_reductions_agree(example1: IdealHandle) -> None:
    candidate, table = primary(example1, "t^6")
    others = random_reductions(example1, 3, 50, random.Random(0))
    result = compare_reductions(example1, candidate, table, others, buchsbaum=True)
    assert not result.skipped
    assert len(result.reductions) == 4
    assert result.tables_agree
    assert result.verdict == "reduction-invariant on sampled reductions; Buchsbaum"
    assert all(row.f == [(1, 1, 1)] for row in result.reductions)


def test_example2_supplied_reductions_agree(example2: IdealHandle) -> None:
    """t^8 and t^8 + t^57 give the same f-table."""
    candidate, table = primary(example2, "t^8")
    other = verify_reduction(example2, example2.ctx.parse("t^8 + t^57"), r_bound=50)
    result = compare_reductions(example2, candidate, table, [other], buchsbaum=False)
    assert result.tables_agree
    assert result.verdict == "reduction-invariant on sampled reductions; not Buchsbaum"
    assert result.reductions[1].reduction == "t^8 + t^57"
    assert result.reductions[1].f == [(1, 1, 1), (1, 2, 2), (2, 1, 1)]


def perturbed_build_tables(monkeypatch: pytest.MonkeyPatch) -> None:
    """Make every compared reduction report f_{1,1} = 0, keeping the extremal entries."""
    real = comparison.build_tables

    def fake(ideal, a, r):
        table, pieces = real(ideal, a, r)
        f = dict(table.f)
        f[(1, 1)] = 0
        alpha = {(1, 1): 0, (1, 2): 2, (2, 1): 0}
        return dataclasses.replace(table, f=f, alpha_torsion=alpha), pieces

    monkeypatch.setattr(comparison, "build_tables", fake)


def test_differing_tables_without_buchsbaum(example2: IdealHandle, monkeypatch: pytest.MonkeyPatch) -> None:
    candidate, table = primary(example2, "t^8")
    other = verify_reduction(example2, example2.ctx.parse("t^8 + t^57"), r_bound=50)
    perturbed_build_tables(monkeypatch)
    result = compare_reductions(example2, candidate, table, [other], buchsbaum=False)
    assert not result.tables_agree
    assert result.verdict == "reduction-dependent; not Buchsbaum"


def test_differing_tables_with_buchsbaum_raise(example2: IdealHandle, monkeypatch: pytest.MonkeyPatch) -> None:
    """A Buchsbaum verdict forbids reduction-dependent tables."""
    candidate, table = primary(example2, "t^8")
    other = verify_reduction(example2, example2.ctx.parse("t^8 + t^57"), r_bound=50)
    perturbed_build_tables(monkeypatch)
    with pytest.raises(InconsistencyError, match="Buchsbaum"):
        compare_reductions(example2, candidate, table, [other], buchsbaum=True)


def test_reduction_number_must_agree(example1: IdealHandle) -> None:
    candidate, table = primary(example1, "t^6")
    fake = ReductionCandidate(element=example1.ctx.parse("t^6 + t^11"), reduction_number=5, source="random")
    with pytest.raises(InconsistencyError, match="reduction number"):
        compare_reductions(example1, candidate, table, [fake], buchsbaum=True)


def test_free_multiplicities_must_agree(example1: IdealHandle, monkeypatch: pytest.MonkeyPatch) -> None:
    candidate, table = primary(example1, "t^6")
    other = verify_reduction(example1, example1.ctx.parse("t^6 + t^11"), r_bound=50)
    real = comparison.build_tables

    def fake(ideal, a, r):
        t, pieces = real(ideal, a, r)
        return dataclasses.replace(t, alpha_free=[1, 2, 0]), pieces

    monkeypatch.setattr(comparison, "build_tables", fake)
    with pytest.raises(InconsistencyError, match="free multiplicities"):
        compare_reductions(example1, candidate, table, [other], buchsbaum=True)
