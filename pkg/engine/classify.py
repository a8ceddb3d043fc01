"""Cohen-Macaulay, Buchsbaum and Gorenstein classification of F(I), with Hilbert data."""

import logging
from typing import Optional

from pydantic import BaseModel

from engine.errors import InconsistencyError
from engine.invariants import Decomposition, InvariantTable
from engine.series import SeriesElement
from engine.subspace import IdealHandle, Subspace

logger = logging.getLogger(__name__)


class HilbertData(BaseModel):
    """Numerator Q(x) of the Hilbert series of F(I) over (1 - x).

    Attributes:
        numerator: h_0..h_r with h_i = μ(I^i) - μ(I^{i-1})
        multiplicity: Q(1)
    """
    numerator: list[int]
    multiplicity: int


class Classification(BaseModel):
    """Flags and numerical invariants of F(I).

    `type`, `a_invariant` and `canonical_shape` are only present when F(I) is
    Cohen-Macaulay; `canonical_shape` lists the twists s of the summands
    F(J)(s) of the canonical module, with repetition.
    """
    cohen_macaulay: bool
    buchsbaum: bool
    gorenstein: bool
    e: int
    reg: int
    fp: int
    torsion_length: int
    buchsbaum_constant: int
    sally: bool
    type: Optional[int] = None
    a_invariant: Optional[int] = None
    canonical_shape: Optional[list[int]] = None


def h_vector(mu: list[int]) -> list[int]:
    return [mu[0]] + [mu[i] - mu[i - 1] for i in range(1, len(mu))]


def hilbert_data(mu: list[int], r: int, decomposition: Decomposition) -> HilbertData:
    """
    Q(x) from the μ-table, checked against the decomposition route.

    Raises:
        InconsistencyError: If the two numerators differ or Q(1) != μ(I^r)
    """
    numerator = h_vector(mu[: r + 1])
    via_decomposition = decomposition.series_numerator(r)
    if numerator != via_decomposition:
        raise InconsistencyError(
            f"Hilbert numerator mismatch: μ-route {numerator}, decomposition route {via_decomposition}"
        )
    if sum(numerator) != mu[r]:
        raise InconsistencyError(f"Q(1) = {sum(numerator)} differs from e = {mu[r]}")
    return HilbertData(numerator=numerator, multiplicity=sum(numerator))


def postulation_number(mu: list[int]) -> int:
    """Largest n >= -1 with μ(I^n) != μ(I^r), reading μ(I^{-1}) as 0."""
    extended = [0] + list(mu)
    top = extended[-1]
    n = len(extended) - 1
    while n >= 0 and extended[n] == top:
        n -= 1
    return n - 1


def is_buchsbaum(ideal: IdealHandle, r: int, pieces: list[Subspace]) -> bool:
    """F_+ · H^0 = 0: every generator maps each torsion lift T_k into m I^{k+1}."""
    for k, piece in enumerate(pieces, start=1):
        target = ideal.maximal_product(k + 1)
        for g in ideal.generators:
            if not target.contains(piece.times([g])):
                logger.debug("F_+·H^0 != 0: %s·T_%d not in mI^%d", g, k, k + 1)
                return False
    return True


def socle_piece(ideal: IdealHandle, a: SeriesElement, i: int) -> int:
    """λ((I^i ∩ (aI^i + mI^{i+1} : I)) / (aI^{i-1} + mI^i))."""
    upper = ideal.power(i).times([a]) + ideal.maximal_product(i + 1)
    numerator = ideal.power(i).intersect(upper.colon_ideal(ideal.generators))
    denominator = ideal.power(i - 1).times([a]) + ideal.maximal_product(i)
    return numerator.quotient_length(denominator)


def cohen_macaulay_type(ideal: IdealHandle, a: SeriesElement, r: int) -> int:
    """Type of a Cohen-Macaulay F(I) as the length of the socle of F(I)/aF(I)."""
    if r == 0:
        return 1
    total = sum(socle_piece(ideal, a, i) for i in range(1, r))
    top = ideal.power(r).quotient_length(
        ideal.power(r - 1).times([a]) + ideal.maximal_product(r)
    )
    return total + top


def is_sally(ideal: IdealHandle, a: SeriesElement) -> bool:
    """λ(I²/aI) = 1."""
    return ideal.power(2).quotient_length(ideal.power(1).times([a])) == 1


def classify(
    ideal: IdealHandle,
    a: SeriesElement,
    table: InvariantTable,
    pieces: list[Subspace],
) -> Classification:
    """
    Classify F(I) for a verified reduction and consistent tables.

    Raises:
        InconsistencyError: If a Gorenstein verdict has a non-palindromic h-vector
    """
    r = table.r
    mu = table.mu
    torsion_length = sum(table.extremal)
    cm = torsion_length == 0
    buchsbaum = cm or r <= 1 or is_buchsbaum(ideal, r, pieces)

    cm_type = a_invariant = shape = None
    gorenstein = False
    if cm:
        cm_type = cohen_macaulay_type(ideal, a, r)
        a_invariant = r - 1
        h = h_vector(mu)
        shape = [i - 1 for i in range(r + 1) for _ in range(h[i])]
        gorenstein = cm_type == 1
        if gorenstein and h != h[::-1]:
            raise InconsistencyError(f"Gorenstein verdict with non-palindromic h-vector {h}")

    result = Classification(
        cohen_macaulay=cm,
        buchsbaum=buchsbaum,
        gorenstein=gorenstein,
        e=mu[r],
        reg=r,
        fp=postulation_number(mu),
        torsion_length=torsion_length,
        buchsbaum_constant=table.buchsbaum_constant,
        sally=is_sally(ideal, a),
        type=cm_type,
        a_invariant=a_invariant,
        canonical_shape=shape,
    )
    logger.info(
        "classification: CM=%s Buchsbaum=%s Gorenstein=%s", cm, buchsbaum, gorenstein
    )
    return result
