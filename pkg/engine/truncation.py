"""Truncation certification by doubling.

An analysis run is a function of the reporting degree N. Runs that need a
window above N raise TruncationError, so any completed run is exact; the
doubling re-run confirms this end to end.
"""

import logging
from typing import Any, Callable, Optional, TypeVar

from pydantic import BaseModel

from engine.errors import CaseError, TruncationError
from engine.semigroup import NumericalSemigroup

logger = logging.getLogger(__name__)

T = TypeVar("T")


class TruncationInfo(BaseModel):
    """Certified degrees of one analysis.

    Attributes:
        reporting: Certified reporting degree N (highest window degree used)
        working: Working degree W = N + V used for element arithmetic
        doublings: How many times N was doubled before a run completed
        override: True if N came from the case file or command line
        certified: The re-run at twice N reproduced every reported number
    """
    reporting: int
    working: int
    doublings: int = 0
    override: bool = False
    certified: bool = True


def initial_truncation(
    semigroup: NumericalSemigroup,
    exponents: list[int],
    valuation_bound: int,
) -> int:
    """
    First reporting degree to try.

    Args:
        semigroup: Ambient semigroup
        exponents: Every exponent appearing in the ideal generators
        valuation_bound: V, the largest valuation among ideal and reduction generators

    Returns:
        max(conductor - 1, largest exponent) + multiplicity + 4V
    """
    top = max([semigroup.conductor - 1] + list(exponents))
    return top + semigroup.multiplicity + 4 * valuation_bound


def certify_stability(
    run: Callable[[int], tuple[T, int]],
    initial: int,
    fingerprint: Callable[[T], Any],
    override: Optional[int] = None,
    max_doublings: int = 4,
) -> tuple[T, int, int]:
    """
    Run an analysis at a certified truncation.

    `run(N)` returns the result together with the highest window degree it used.
    Without an override N starts at `initial` and doubles on TruncationError.
    The completed run is repeated at twice the certified degree and both
    fingerprints must agree.

    Args:
        run: Analysis at a given reporting degree
        initial: First N to try
        fingerprint: Extracts every reported number from a result
        override: Fixed N; failures are not retried
        max_doublings: Doubling budget

    Returns:
        (result, certified N, doublings used)

    Raises:
        TruncationError: If no run completes within the budget, the override is
            too small, or the doubled run disagrees
    """
    doublings = 0
    if override is not None:
        if override < 0:
            raise CaseError(f"truncation override must be non-negative, got {override}")
        n = override
        result, used = run(n)
    else:
        n = initial
        while True:
            try:
                result, used = run(n)
                break
            except TruncationError as exc:
                if doublings >= max_doublings:
                    raise TruncationError(
                        f"truncation did not certify: still short at N={n} after "
                        f"{doublings} doublings ({exc})"
                    ) from exc
                doublings += 1
                logger.debug("truncation N=%d too small, doubling", n)
                n *= 2
        n = max(used, 0)

    check, _ = run(2 * max(n, 1))
    if fingerprint(check) != fingerprint(result):
        raise TruncationError(
            f"truncation did not certify: results at N={n} and N={2 * max(n, 1)} differ"
        )
    logger.info("truncation certified at N=%d after %d doublings", n, doublings)
    return result, n, doublings
