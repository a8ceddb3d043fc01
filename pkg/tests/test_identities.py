"""Tests for the length identities and structure theorems on known instances."""

import pytest

from engine.classify import Classification, classify
from engine.identities import (
    colon_stabilization_violations,
    fiber_quotient_length,
    gorenstein_criterion,
    graded_quotient_length,
    implication_violations,
    property_violations,
)
from engine.invariants import build_tables
from engine.subspace import IdealHandle


def violations(ideal: IdealHandle, reduction: str, r: int) -> list[str]:
    a = ideal.ctx.parse(reduction)
    table, pieces = build_tables(ideal, a, r)
    c = classify(ideal, a, table, pieces)
    return property_violations(ideal, a, table, c, table.decomposition())


# =============================================================================
# Lengths
# =============================================================================


def test_graded_pieces_of_f_mod_a(example1: IdealHandle) -> None:
    """F/aF for Example 1 has lengths 1, 2, 1 in degrees 0, 1, 2."""
    a = example1.ctx.monomial(6)
    assert graded_quotient_length(example1, a, 0, 1) == 1
    assert graded_quotient_length(example1, a, 1, 1) == 2
    assert graded_quotient_length(example1, a, 2, 1) == 1
    assert graded_quotient_length(example1, a, 3, 1) == 0


def test_fiber_quotient_lengths(example1: IdealHandle) -> None:
    """λ(F/aF) = μ(I^r) + Σ f_k,1 and λ(F/a^3F) = 3μ(I^r) + Σ f_k,r-k."""
    a = example1.ctx.monomial(6)
    assert fiber_quotient_length(example1, a, 2) == 3 + 1
    assert fiber_quotient_length(example1, a, 2, 3) == 3 * 3 + 1


def test_colon_stabilization(example2: IdealHandle) -> None:
    assert colon_stabilization_violations(example2, example2.ctx.monomial(8), 3) == []


# =============================================================================
# Gorenstein criterion
# =============================================================================


def test_gorenstein_criterion(ideal_factory) -> None:
    ctx, two = ideal_factory([3, 7], ["t^3", "t^7"])
    assert gorenstein_criterion(two, ctx.monomial(3), 2, [1, 2, 3])
    ctx, cusp = ideal_factory([3, 4, 5], ["t^3", "t^4", "t^5"])
    assert not gorenstein_criterion(cusp, ctx.monomial(3), 1, [1, 3])


def test_gorenstein_criterion_rejects_torsion(example1: IdealHandle) -> None:
    assert not gorenstein_criterion(example1, example1.ctx.monomial(6), 2, [1, 3, 3])


# =============================================================================
# Whole suite
# =============================================================================


@pytest.mark.parametrize(
    "ideal_name,reduction,r",
    [
        ("example1", "t^6", 2),
        ("example1", "t^6 + 5*t^11", 2),
        ("example2", "t^8", 3),
        ("example2", "t^8 + t^57", 3),
        ("closing", "t^4", 3),
    ],
)
def test_worked_examples_satisfy_every_identity(request, ideal_name: str, reduction: str, r: int) -> None:
    assert violations(request.getfixturevalue(ideal_name), reduction, r) == []


@pytest.mark.parametrize(
    "semigroup,generators,r",
    [
        ([3, 7], ["t^3", "t^7"], 2),
        ([3, 4, 5], ["t^3", "t^4", "t^5"], 1),
        ([6, 11, 15, 31], ["t^6"], 0),
    ],
)
def test_cohen_macaulay_cases_satisfy_every_identity(ideal_factory, semigroup, generators, r) -> None:
    _, ideal = ideal_factory(semigroup, generators)
    assert violations(ideal, generators[0], r) == []


def test_implication_violations() -> None:
    """Gorenstein without CM, and CM with torsion, are reported."""
    broken = Classification(
        cohen_macaulay=False,
        buchsbaum=True,
        gorenstein=True,
        e=3,
        reg=2,
        fp=0,
        torsion_length=0,
        buchsbaum_constant=0,
        sally=False,
    )
    found = implication_violations(broken)
    assert "Gorenstein but not Cohen-Macaulay" in found
    assert any(m.startswith("CM flag False") for m in found)
