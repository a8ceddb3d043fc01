"""Principal reductions J = (a) of I and their reduction numbers."""

import logging
import random
from dataclasses import dataclass
from typing import Optional

from engine.errors import CaseError, NoReductionError
from engine.series import SeriesElement
from engine.subspace import IdealHandle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionCandidate:
    """A verified principal reduction.

    Attributes:
        element: The reduction element a
        reduction_number: Least r with I^{r+1} = a·I^r
        verified: Always True for candidates returned by this module
        source: "generator", "random" or "supplied"
    """
    element: SeriesElement
    reduction_number: int
    verified: bool = True
    source: str = "generator"


def reduction_number(ideal: IdealHandle, a: SeriesElement, r_bound: int) -> Optional[int]:
    """Least n <= r_bound with I^{n+1} = a·I^n, or None."""
    if a.is_zero() or int(a.valuation) != ideal.valuation:
        return None
    for n in range(r_bound + 1):
        if ideal.power(n + 1) == ideal.power(n).times([a]):
            return n
    return None


def verify_reduction(
    ideal: IdealHandle,
    a: SeriesElement,
    r_bound: int,
    source: str = "supplied",
) -> ReductionCandidate:
    """
    Check a given element and compute its reduction number.

    Raises:
        CaseError: If a is not an element of I
        NoReductionError: If a is not a reduction within r_bound
    """
    if a.is_zero():
        raise CaseError("reduction element is zero")
    if not ideal.contains_element(a):
        raise CaseError(f"reduction {a} is not an element of the ideal")
    r = reduction_number(ideal, a, r_bound)
    if r is None:
        raise NoReductionError(
            f"no principal reduction found within bound: {a} fails for r <= {r_bound}"
        )
    logger.debug("reduction %s verified with r=%d", a, r)
    return ReductionCandidate(element=a, reduction_number=r, source=source)


def random_combination(ideal: IdealHandle, rng: random.Random) -> SeriesElement:
    """Sum of all generators with random nonzero coefficients."""
    field = ideal.ctx.series.field
    total = ideal.ctx.series.zero()
    for g in ideal.generators:
        total = total + g.scale(field.random(rng, nonzero=True))
    return total


def find_reduction(
    ideal: IdealHandle,
    attempts: int,
    r_bound: int,
    rng: random.Random,
) -> ReductionCandidate:
    """
    Search for a principal reduction.

    Generators of minimal valuation are tried first, then `attempts` random
    combinations of all generators. Candidates whose valuation is not v(I)
    cannot be reductions and are skipped.

    Raises:
        NoReductionError: If no candidate verifies
    """
    candidates: list[tuple[SeriesElement, str]] = [
        (g, "generator") for g in ideal.generators if int(g.valuation) == ideal.valuation
    ]
    candidates += [(random_combination(ideal, rng), "random") for _ in range(attempts)]
    for a, source in candidates:
        if a.is_zero() or int(a.valuation) != ideal.valuation:
            logger.debug("skipping candidate %s: valuation is not %d", a, ideal.valuation)
            continue
        r = reduction_number(ideal, a, r_bound)
        if r is not None:
            logger.info("reduction %s (%s) with r=%d", a, source, r)
            return ReductionCandidate(element=a, reduction_number=r, source=source)
        logger.debug("candidate %s is not a reduction within r <= %d", a, r_bound)
    raise NoReductionError(
        f"no principal reduction found within bound: {len(candidates)} candidates, r <= {r_bound}"
    )


def random_reductions(
    ideal: IdealHandle,
    count: int,
    r_bound: int,
    rng: random.Random,
) -> list[ReductionCandidate]:
    """Up to `count` verified random reductions (invalid draws are redrawn a few times)."""
    found: list[ReductionCandidate] = []
    draws = 0
    while len(found) < count and draws < 4 * count + 4:
        draws += 1
        a = random_combination(ideal, rng)
        r = reduction_number(ideal, a, r_bound)
        if r is not None:
            found.append(ReductionCandidate(element=a, reduction_number=r, source="random"))
    return found
