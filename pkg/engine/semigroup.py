"""Numerical semigroups: membership, conductor and monomial enumeration.

A numerical semigroup S is given by positive generators with gcd 1. It fixes the
exponent support of the ambient ring A = k[[t^S]].
"""

import logging
from functools import reduce
from math import gcd

from engine.errors import SemigroupError

logger = logging.getLogger(__name__)


class NumericalSemigroup:
    """Immutable numerical semigroup with a precomputed membership sieve.

    The sieve runs until `multiplicity` consecutive members appear; from there on
    every integer is a member, so the first of that run is the conductor.
    """

    def __init__(self, generators: list[int]) -> None:
        """
        Build the semigroup and its sieve.

        Args:
            generators: Positive integers; duplicates are removed and order is ignored

        Raises:
            SemigroupError: If the list is empty, holds a non-positive value,
                or the generators have gcd different from 1
        """
        if not generators:
            raise SemigroupError("semigroup needs at least one generator")
        if any(g <= 0 for g in generators):
            raise SemigroupError(f"generators must be positive, got {list(generators)}")
        gens = sorted(set(int(g) for g in generators))
        if reduce(gcd, gens) != 1:
            raise SemigroupError(f"generators {gens} have gcd {reduce(gcd, gens)}, expected 1")

        self._generators: tuple[int, ...] = tuple(gens)
        self._conductor, self._small = self._sieve(gens)
        self._small_set = frozenset(self._small)
        self._minimal = tuple(
            g for g in gens if not self._representable_without(g, gens)
        )
        logger.debug(
            "semigroup %s: conductor %d, %d gaps", gens, self._conductor, self.gap_count
        )

    @staticmethod
    def _sieve(gens: list[int]) -> tuple[int, list[int]]:
        """Return the conductor and the members below it."""
        m = gens[0]
        member = [True]
        run = 1
        n = 0
        while run < m:
            n += 1
            hit = any(n >= g and member[n - g] for g in gens)
            member.append(hit)
            run = run + 1 if hit else 0
        conductor = n - m + 1
        return conductor, [s for s in range(conductor) if member[s]]

    def _representable_without(self, g: int, gens: list[int]) -> bool:
        smaller = [h for h in gens if h < g]
        reach = [True] + [False] * g
        for n in range(1, g + 1):
            reach[n] = any(n >= h and reach[n - h] for h in smaller)
        return reach[g]

    @property
    def generators(self) -> tuple[int, ...]:
        return self._generators

    @property
    def minimal_generators(self) -> tuple[int, ...]:
        """Generators not expressible through smaller ones; these generate the maximal ideal."""
        return self._minimal

    @property
    def conductor(self) -> int:
        return self._conductor

    @property
    def multiplicity(self) -> int:
        return self._generators[0]

    @property
    def gap_count(self) -> int:
        return self._conductor - len(self._small)

    def gaps(self) -> list[int]:
        return [n for n in range(self._conductor) if n not in self._small_set]

    def __contains__(self, n: int) -> bool:
        return n >= self._conductor or (n >= 0 and n in self._small_set)

    def contains(self, n: int) -> bool:
        """
        Membership test.

        Args:
            n: Non-negative integer

        Returns:
            True if n is a non-negative combination of the generators

        Raises:
            SemigroupError: If n is negative
        """
        if n < 0:
            raise SemigroupError(f"membership query needs n >= 0, got {n}")
        return n in self

    def monomials_up_to(self, bound: int) -> list[int]:
        """All members s <= bound in ascending order."""
        return self.members_between(0, bound)

    def members_between(self, low: int, high: int) -> list[int]:
        """All members s with low <= s <= high in ascending order."""
        low = max(low, 0)
        if high < low:
            return []
        small = [s for s in self._small if low <= s <= high]
        return small + list(range(max(low, self._conductor), high + 1))

    def next_member(self, n: int) -> int:
        """Smallest member strictly greater than n."""
        s = n + 1
        while s not in self:
            s += 1
        return s

    def previous_member(self, n: int) -> int:
        """Largest member <= n, or -1 when n < 0."""
        if n < 0:
            return -1
        s = n
        while s not in self:
            s -= 1
        return s

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self._generators == other._generators

    def __hash__(self) -> int:
        return hash(self._generators)

    def __repr__(self) -> str:
        return f"NumericalSemigroup({list(self._generators)})"

    def __str__(self) -> str:
        return "<" + ",".join(str(g) for g in self._generators) + ">"
