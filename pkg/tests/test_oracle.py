"""Tests for the rank route: multiplication-by-a matrices and the cross-check."""

import numpy as np
import pytest

from engine.echelon import rank
from engine.invariants import build_tables
from engine.oracle import CrossCheck, build_chain, cross_check, f_via_ranks
from engine.subspace import IdealHandle


def test_example1_chain(example1: IdealHandle) -> None:
    """dims follow μ; M_1 has nullity f_{1,1} = 1."""
    chain = build_chain(example1, example1.ctx.monomial(6), 2)
    assert chain.dims == [1, 3, 3, 3, 3]
    assert len(chain.maps) == 4
    assert chain.maps[1].shape == (3, 3)
    assert rank(chain.maps[1], chain.p) == 2
    assert f_via_ranks(chain, 1, 1) == 1


def test_bases_are_leading_exponents(example1: IdealHandle) -> None:
    chain = build_chain(example1, example1.ctx.monomial(6), 2)
    assert chain.bases[0] == [0]
    assert chain.bases[1] == [6, 11, 31]


@pytest.mark.parametrize("reduction", ["t^8", "t^8 + t^57"])
def test_example2_rank_route(example2: IdealHandle, reduction: str) -> None:
    chain = build_chain(example2, example2.ctx.parse(reduction), 3)
    assert f_via_ranks(chain, 1, 1) == 1
    assert f_via_ranks(chain, 1, 2) == 2
    assert f_via_ranks(chain, 2, 1) == 1


def test_two_generated_maps_are_injective(ideal_factory) -> None:
    """F(I) free over F(J): every M_n is injective."""
    ctx, ideal = ideal_factory([3, 7], ["t^3", "t^7"])
    chain = build_chain(ideal, ctx.monomial(3), 2)
    assert chain.dims == [1, 2, 3, 3, 3]
    for n, m in enumerate(chain.maps):
        assert rank(m, chain.p) == chain.dims[n]


def test_f_outside_table(example1: IdealHandle) -> None:
    chain = build_chain(example1, example1.ctx.monomial(6), 2)
    with pytest.raises(ValueError, match="outside the table"):
        f_via_ranks(chain, 2, 1)
    with pytest.raises(ValueError):
        f_via_ranks(chain, 0, 1)


# =============================================================================
# Cross-check
# =============================================================================


@pytest.mark.parametrize(
    "ideal_name,reduction,r",
    [("example1", "t^6", 2), ("example2", "t^8", 3), ("example2", "t^8 + t^57", 3), ("closing", "t^4", 3)],
)
def test_cross_check_passes(request, ideal_name: str, reduction: str, r: int) -> None:
    ideal = request.getfixturevalue(ideal_name)
    a = ideal.ctx.parse(reduction)
    table, _ = build_tables(ideal, a, r)
    result = cross_check(ideal, a, table, table.decomposition())
    assert result.passed, result.mismatches
    assert result.checks > len(table.f)


def test_corrupted_map_is_located(example1: IdealHandle) -> None:
    """Zeroing M_1 breaks f_{1,1} and the report names the entry."""
    a = example1.ctx.monomial(6)
    table, _ = build_tables(example1, a, 2)
    chain = build_chain(example1, a, 2)
    chain.maps[1] = np.zeros_like(chain.maps[1])
    result = cross_check(example1, a, table, table.decomposition(), chain=chain)
    assert not result.passed
    assert any(m.startswith("f[1,1]: rank route 3, colon route 1") for m in result.mismatches)


def test_crosscheck_expect() -> None:
    check = CrossCheck()
    check.expect(True, "fine")
    check.expect(False, "broken")
    assert check.checks == 2
    assert not check.passed
    assert check.mismatches == ["broken"]
