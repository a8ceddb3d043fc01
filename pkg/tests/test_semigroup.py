"""Tests for NumericalSemigroup: sieve, conductor, gaps and membership."""

import random

import pytest

from engine.errors import SemigroupError
from engine.semigroup import NumericalSemigroup


# =============================================================================
# Members and conductor
# =============================================================================


def test_monomials_up_to() -> None:
    """Members of <6,11,15,31> up to 17."""
    s = NumericalSemigroup([6, 11, 15, 31])
    assert s.monomials_up_to(17) == [0, 6, 11, 12, 15, 17]


def test_conductors() -> None:
    """Conductor of a few semigroups, including N itself."""
    assert NumericalSemigroup([6, 11, 15, 31]).conductor == 26
    assert NumericalSemigroup([2, 3]).conductor == 2
    assert NumericalSemigroup([4, 5, 11]).conductor == 8
    assert NumericalSemigroup([1]).conductor == 0


def test_gaps() -> None:
    """Gaps are the non-members below the conductor."""
    assert NumericalSemigroup([2, 3]).gaps() == [1]
    assert NumericalSemigroup([4, 5, 11]).gaps() == [1, 2, 3, 6, 7]
    assert NumericalSemigroup([4, 5, 11]).gap_count == 5
    assert 25 in NumericalSemigroup([6, 11, 15, 31]).gaps()


def test_everything_above_conductor_is_member() -> None:
    """Every integer from the conductor on is a member."""
    s = NumericalSemigroup([8, 15, 28, 50, 57])
    c = s.conductor
    assert c - 1 not in s
    assert all(n in s for n in range(c, c + 40))


@pytest.mark.parametrize("generators", [[2, 3], [4, 5, 11], [6, 11, 15, 31], [8, 15, 28, 50, 57]])
def test_additive_closure(generators: list[int]) -> None:
    """Sums of random members are members."""
    s = NumericalSemigroup(generators)
    members = s.monomials_up_to(2 * s.conductor + 10)
    rng = random.Random(len(generators))
    for _ in range(200):
        x, y = rng.choice(members), rng.choice(members)
        assert x + y in s


@pytest.mark.parametrize("generators", [[2, 3], [4, 5, 11], [6, 11, 15, 31], [8, 15, 28, 50, 57]])
def test_member_count(generators: list[int]) -> None:
    """|S ∩ [0, N]| = N + 1 - (number of gaps) once N passes the conductor."""
    s = NumericalSemigroup(generators)
    for bound in (s.conductor, s.conductor + 17):
        assert len(s.monomials_up_to(bound)) == bound + 1 - s.gap_count


def test_minimal_generators() -> None:
    """Redundant generators are dropped from the minimal system."""
    s = NumericalSemigroup([8, 4, 11, 5])
    assert s.generators == (4, 5, 8, 11)
    assert s.minimal_generators == (4, 5, 11)
    assert s.multiplicity == 4


def test_neighbours() -> None:
    """next_member is strict, previous_member is inclusive."""
    s = NumericalSemigroup([6, 11, 15, 31])
    assert s.next_member(11) == 12
    assert s.next_member(-1) == 0
    assert s.previous_member(14) == 12
    assert s.previous_member(12) == 12
    assert s.previous_member(-3) == -1


def test_members_between() -> None:
    s = NumericalSemigroup([4, 5, 11])
    assert s.members_between(6, 12) == [8, 9, 10, 11, 12]
    assert s.members_between(5, 4) == []


def test_str() -> None:
    assert str(NumericalSemigroup([31, 6, 15, 11])) == "<6,11,15,31>"


# =============================================================================
# Errors
# =============================================================================


def test_gcd_not_one() -> None:
    """Generators with a common factor do not define a numerical semigroup."""
    with pytest.raises(SemigroupError, match="gcd"):
        NumericalSemigroup([4, 6])


def test_empty_and_non_positive() -> None:
    with pytest.raises(SemigroupError):
        NumericalSemigroup([])
    with pytest.raises(SemigroupError, match="positive"):
        NumericalSemigroup([0, 3, 5])


def test_negative_membership() -> None:
    """`in` answers False for negatives; contains() refuses them."""
    s = NumericalSemigroup([2, 3])
    assert -1 not in s
    with pytest.raises(SemigroupError):
        s.contains(-1)
    assert s.contains(5)
    assert not s.contains(1)


def test_semigroup_error_is_value_error() -> None:
    with pytest.raises(ValueError):
        NumericalSemigroup([10, 15])
