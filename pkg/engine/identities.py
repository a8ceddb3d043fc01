"""Length identities and structure theorems checked on analyzed instances.

Every `*_violations` function returns human-readable descriptions of the
failures it found; an empty list means the instance satisfies the property.
"""

import logging

from engine.classify import Classification, h_vector
from engine.invariants import Decomposition, InvariantTable, a_powers, table_entry
from engine.series import SeriesElement
from engine.subspace import IdealHandle, Subspace

logger = logging.getLogger(__name__)


def reduced_piece(ideal: IdealHandle, a: SeriesElement, n: int, j: int) -> Subspace:
    """m I^n + a^j I^{n-j} for 0 <= j <= n."""
    return ideal.maximal_product(n) + ideal.power(n - j).times([a_powers(a, j)[-1]])


def graded_quotient_length(ideal: IdealHandle, a: SeriesElement, n: int, j: int) -> int:
    """λ(I^n / (m I^n + a^j I^{n-j})), the degree-n piece of F/a^j F."""
    if n < j:
        return ideal.mu(n)
    return ideal.power(n).quotient_length(reduced_piece(ideal, a, n, j))


def fiber_quotient_length(ideal: IdealHandle, a: SeriesElement, r: int, j: int = 1) -> int:
    """λ(F/a^j F) summed over the degrees where it can be nonzero."""
    return sum(graded_quotient_length(ideal, a, n, j) for n in range(r + j))


# ============================================================================
# Colon and length identities
# ============================================================================


def colon_stabilization_violations(ideal: IdealHandle, a: SeriesElement, r: int) -> list[str]:
    """Colons by powers of a: regular on m, on m I^k for k >= r, ascending and stable below r."""
    found = []
    powers = a_powers(a, r + 2)
    maximal = ideal.ctx.maximal
    for l in range(1, r + 1):
        if ideal.maximal_product(l).colon(powers[l]) != maximal:
            found.append(f"(mI^{l} : a^{l}) != m")
    for k in (r, r + 1):
        for l in (1, 2):
            if ideal.maximal_product(k + l).colon(powers[l]) != ideal.maximal_product(k):
                found.append(f"(mI^{k + l} : a^{l}) != mI^{k}")
    for k in range(1, r):
        chain = [ideal.maximal_product(k + l).colon(powers[l]) for l in range(1, r - k + 1)]
        for l, (lower, upper) in enumerate(zip(chain, chain[1:]), start=1):
            if not upper.contains(lower):
                found.append(f"colon chain at k={k} drops between l={l} and l={l + 1}")
        for extra in (1, 2):
            shifted = ideal.maximal_product(r + extra).colon(powers[r - k + extra])
            if shifted != chain[-1]:
                found.append(f"colon chain at k={k} not stable at n={extra}")
    return found


def length_identity_violations(ideal: IdealHandle, a: SeriesElement, r: int, mu: list[int]) -> list[str]:
    """λ(I^n/(mI^n + a^{n-i}I^i)) = μ_n - μ_i + λ((a^{n-i}I^i ∩ mI^n)/a^{n-i}mI^i), 0 <= i < n <= r."""
    found = []
    powers = a_powers(a, r)
    for n in range(1, r + 1):
        for i in range(n):
            lhs = graded_quotient_length(ideal, a, n, n - i)
            shifted = ideal.power(i).times([powers[n - i]])
            overlap = shifted.intersect(ideal.maximal_product(n))
            correction = overlap.quotient_length(ideal.maximal_product(i).times([powers[n - i]]))
            rhs = mu[n] - mu[i] + correction
            if lhs != rhs:
                found.append(f"length identity fails at n={n}, i={i}: {lhs} != {rhs}")
    return found


def quotient_length_violations(ideal: IdealHandle, a: SeriesElement, table: InvariantTable) -> list[str]:
    """λ(F/aF) and λ(F/a^{r+1}F) against the f-table, and the Buchsbaum constant."""
    found = []
    r, mu = table.r, table.mu
    direct = fiber_quotient_length(ideal, a, r)
    via_f = mu[r] + table.buchsbaum_constant
    if direct != via_f:
        found.append(f"λ(F/aF) = {direct}, but μ(I^r) + Σ f_k,1 = {via_f}")
    if direct - mu[r] != table.buchsbaum_constant:
        found.append(
            f"λ(F/aF) - e = {direct - mu[r]} differs from Buchsbaum constant {table.buchsbaum_constant}"
        )
    direct_top = fiber_quotient_length(ideal, a, r, r + 1)
    via_extremal = (r + 1) * mu[r] + sum(table.extremal)
    if direct_top != via_extremal:
        found.append(f"λ(F/a^{r + 1}F) = {direct_top}, but (r+1)μ(I^r) + Σ f_k,r-k = {via_extremal}")
    return found


def generator_growth_violations(ideal: IdealHandle, a: SeriesElement, r: int, mu: list[int]) -> list[str]:
    """μ(I^n) >= n + 1 for n <= r, and μ(I^n) as a telescoping sum along m I^n + a^i I^{n-i}."""
    found = []
    for n in range(1, r + 1):
        if mu[n] < n + 1:
            found.append(f"μ(I^{n}) = {mu[n]} < {n + 1}")
        total = 1 + graded_quotient_length(ideal, a, n, 1)
        for i in range(2, n + 1):
            total += reduced_piece(ideal, a, n, i - 1).quotient_length(reduced_piece(ideal, a, n, i))
        if total != mu[n]:
            found.append(f"telescoping sum for μ(I^{n}) gives {total}, expected {mu[n]}")
    return found


# ============================================================================
# Structure theorems
# ============================================================================


def implication_violations(c: Classification) -> list[str]:
    found = []
    if c.gorenstein and not c.cohen_macaulay:
        found.append("Gorenstein but not Cohen-Macaulay")
    if c.cohen_macaulay and not c.buchsbaum:
        found.append("Cohen-Macaulay but not Buchsbaum")
    if c.cohen_macaulay != (c.torsion_length == 0):
        found.append(f"CM flag {c.cohen_macaulay} with torsion length {c.torsion_length}")
    return found


def small_reduction_number_violations(
    table: InvariantTable, c: Classification, decomposition: Decomposition
) -> list[str]:
    """Shapes forced by r = 1, r = 2 and by two-generated ideals."""
    found = []
    r, mu = table.r, table.mu
    if r == 1:
        if table.alpha_free != [1, mu[1] - 1]:
            found.append(f"r=1 but α = {table.alpha_free}, expected [1, {mu[1] - 1}]")
        if not c.cohen_macaulay:
            found.append("r=1 but not Cohen-Macaulay")
        if c.gorenstein != (mu[1] == 2):
            found.append(f"r=1: Gorenstein={c.gorenstein} with μ(I)={mu[1]}")
    if r == 2:
        f11 = table_entry(table.f, 1, 1)
        expected = [1, mu[1] - 1 - f11, mu[2] - mu[1] + f11]
        if table.alpha_free != expected:
            found.append(f"r=2 but α = {table.alpha_free}, expected {expected}")
        if not c.buchsbaum:
            found.append("r=2 but not Buchsbaum")
    if r >= 1 and mu[1] == 2:
        if not c.gorenstein:
            found.append("two-generated ideal is not Gorenstein")
        if decomposition.torsion or decomposition.free_shifts != list(range(r + 1)):
            found.append(f"two-generated ideal with decomposition {decomposition.render()}")
    return found


def cohen_macaulay_violations(table: InvariantTable, c: Classification) -> list[str]:
    """Strict growth of μ and fp = r - 1 under CM; palindromic h-vector under Gorenstein."""
    found = []
    r, mu = table.r, table.mu
    if c.cohen_macaulay:
        if any(mu[n + 1] <= mu[n] for n in range(r)):
            found.append(f"CM with μ not strictly increasing: {mu}")
        if c.fp != r - 1:
            found.append(f"CM with fp = {c.fp}, expected {r - 1}")
    if c.gorenstein:
        h = h_vector(mu[: r + 1])
        if h != h[::-1]:
            found.append(f"Gorenstein with h-vector {h}")
    return found


def gorenstein_criterion(ideal: IdealHandle, a: SeriesElement, r: int, mu: list[int]) -> bool:
    """μ(I^r) = μ(I^{r-1}) + 1 and both torsion and socle vanish in degrees 1..r-1."""
    previous = mu[r - 1] if r >= 1 else 0
    if mu[r] != previous + 1:
        return False
    for n in range(1, r):
        torsion = ideal.power(n).intersect(ideal.maximal_product(n + 1).colon(a))
        if torsion != ideal.maximal_product(n):
            return False
        upper = ideal.power(n).times([a]) + ideal.maximal_product(n + 1)
        socle = ideal.power(n).intersect(upper.colon_ideal(ideal.generators))
        if socle != ideal.power(n - 1).times([a]) + ideal.maximal_product(n):
            return False
    return True


def gorenstein_criterion_violations(
    ideal: IdealHandle, a: SeriesElement, table: InvariantTable, c: Classification
) -> list[str]:
    criterion = gorenstein_criterion(ideal, a, table.r, table.mu)
    if criterion != c.gorenstein:
        return [f"Gorenstein flag {c.gorenstein} but degree-wise criterion gives {criterion}"]
    return []


def sally_violations(table: InvariantTable, c: Classification) -> list[str]:
    """Consequences of λ(I²/aI) = 1 for the f-table and μ."""
    if not c.sally:
        return []
    found = []
    r, mu = table.r, table.mu
    for k in range(1, r):
        expected = mu[k] - mu[k + 1] + 1
        if table_entry(table.f, k, 1) != expected:
            found.append(f"Sally ideal with f_{k},1 = {table_entry(table.f, k, 1)}, expected {expected}")
    if c.cohen_macaulay and any(mu[n + 1] != mu[n] + 1 for n in range(1, r)):
        found.append(f"Sally CM ideal with μ = {mu}")
    if r >= 3 and c.gorenstein and mu[1] != 2:
        found.append(f"Sally Gorenstein ideal with r={r} and μ(I)={mu[1]}")
    return found


def property_violations(
    ideal: IdealHandle,
    a: SeriesElement,
    table: InvariantTable,
    classification: Classification,
    decomposition: Decomposition,
) -> list[str]:
    """Run every identity and structure check on one analyzed instance."""
    r, mu = table.r, table.mu
    found = (
        colon_stabilization_violations(ideal, a, r)
        + length_identity_violations(ideal, a, r, mu)
        + quotient_length_violations(ideal, a, table)
        + generator_growth_violations(ideal, a, r, mu)
        + implication_violations(classification)
        + small_reduction_number_violations(table, classification, decomposition)
        + cohen_macaulay_violations(table, classification)
        + gorenstein_criterion_violations(ideal, a, table, classification)
        + sally_violations(table, classification)
    )
    if found:
        logger.warning("%d property violations: %s", len(found), "; ".join(found))
    return found
