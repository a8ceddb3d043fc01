"""Second route to the f-table through multiplication-by-a matrices.

Each graded piece I^n/mI^n gets an explicit basis of coset representatives:
the echelon rows of I^n whose leading exponents are not values of mI^n, taken
in ascending exponent order. Multiplication by a is then a matrix M_n from
degree n to degree n+1, and f_{k,l} is the nullity of M_{k+l-1}···M_k.

The only code shared with the colon route is the subspace arithmetic that
produces I^n and mI^n.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from engine.classify import hilbert_data
from engine.echelon import matmul, rank, solve_rows
from engine.errors import InconsistencyError
from engine.identities import fiber_quotient_length
from engine.invariants import Decomposition, InvariantTable, MU_PADDING, table_entry
from engine.series import SeriesElement
from engine.subspace import IdealHandle

logger = logging.getLogger(__name__)


@dataclass
class GradedMapChain:
    """Bases of I^n/mI^n for n = 0..r+pad and the maps M_n: degree n -> n+1.

    Attributes:
        r: Reduction number of the reduction used
        bases: Leading exponents of the coset representatives per degree
        maps: M_n with shape (μ(I^{n+1}), μ(I^n)); column j holds the
            coordinates of a·(j-th representative) modulo mI^{n+1}
        p: Field characteristic
    """
    r: int
    bases: list[list[int]]
    maps: list[np.ndarray] = field(default_factory=list)
    p: int = 32003

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def composite(self, k: int, l: int) -> np.ndarray:
        """M_{k+l-1} ··· M_k."""
        product = self.maps[k]
        for n in range(k + 1, k + l):
            product = matmul(self.maps[n], product, self.p)
        return product


def _representatives(ideal: IdealHandle, n: int) -> tuple[np.ndarray, list[int], np.ndarray, np.ndarray]:
    """
    Window of degree n with representative rows and the rows of mI^n.

    Returns:
        (columns, representative exponents, representative rows, rows spanning mI^n)
    """
    power = ideal.power(n)
    lower = ideal.maximal_product(n)
    bound = max(power.tail, lower.tail)
    columns = ideal.ctx.columns(power.valuation, bound)
    rows = power.vectors_over(columns, bound)
    exponents = power.pivots_up_to(bound)
    taken = set(lower.pivots_up_to(bound))
    keep = [i for i, e in enumerate(exponents) if e not in taken]
    return (
        columns,
        [exponents[i] for i in keep],
        rows[keep],
        lower.vectors_over(columns, bound),
    )


def build_chain(ideal: IdealHandle, a: SeriesElement, r: int, pad: int = MU_PADDING) -> GradedMapChain:
    """
    Build the chain of multiplication-by-a maps up to degree r + pad.

    Raises:
        InconsistencyError: If a·(representative) leaves I^{n+1}, or some
            M_n with n >= r is not bijective
    """
    ring = ideal.ctx.series
    p = ideal.ctx.p
    degrees = [_representatives(ideal, n) for n in range(r + pad + 1)]
    chain = GradedMapChain(r=r, bases=[d[1] for d in degrees], p=p)

    for n in range(r + pad):
        columns, _, reps, _ = degrees[n]
        target, _, target_reps, target_lower = degrees[n + 1]
        top = int(target[-1]) if len(target) else -1
        images = np.zeros((len(reps), len(target)), dtype=np.int64)
        position = {int(e): i for i, e in enumerate(target)}
        for j, row in enumerate(reps):
            element = ring.element({int(columns[i]): int(row[i]) for i in np.flatnonzero(row)})
            for e, c in (element * a).items():
                if e <= top:
                    images[j, position[e]] = c
        basis = np.vstack([target_reps, target_lower])
        try:
            coefficients = solve_rows(basis, images, p)
        except ValueError as exc:
            raise InconsistencyError(f"a·I^{n}/mI^{n} does not land in I^{n + 1}: {exc}") from exc
        chain.maps.append(coefficients[:, : len(target_reps)].T.copy())
        logger.debug("M_%d: %d x %d, rank %d", n, len(target_reps), len(reps), rank(chain.maps[-1], p))

    for n in range(r, r + pad):
        m = chain.maps[n]
        if m.shape[0] != m.shape[1] or rank(m, p) != m.shape[0]:
            raise InconsistencyError(f"M_{n} is not bijective for n >= r = {r}: shape {m.shape}")
    return chain


def f_via_ranks(chain: GradedMapChain, k: int, l: int) -> int:
    """
    f_{k,l} as the nullity of the l-fold composite starting in degree k.

    Raises:
        ValueError: Unless 1 <= k <= r-1 and 1 <= l <= r-k
    """
    if not (1 <= k <= chain.r - 1 and 1 <= l <= chain.r - k):
        raise ValueError(f"f_{k},{l} is outside the table for r={chain.r}")
    return chain.dims[k] - rank(chain.composite(k, l), chain.p)


class CrossCheck(BaseModel):
    """Outcome of the rank-route cross-check.

    Attributes:
        passed: True iff no mismatch was found
        checks: Number of individual comparisons made
        mismatches: Located descriptions of every failed comparison
    """
    passed: bool = True
    checks: int = 0
    mismatches: list[str] = Field(default_factory=list)

    def expect(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.passed = False
            self.mismatches.append(message)


def cross_check(
    ideal: IdealHandle,
    a: SeriesElement,
    table: InvariantTable,
    decomposition: Decomposition,
    chain: Optional[GradedMapChain] = None,
) -> CrossCheck:
    """
    Compare the rank route with the colon route.

    Checks chain dimensions against μ, every f_{k,l}, the nullities of single
    maps against f_{k,1}, composite monotonicity, bijectivity beyond r, the
    Hilbert numerator and λ(F/a^{r+1}F).
    """
    r = table.r
    if chain is None:
        chain = build_chain(ideal, a, r)
    result = CrossCheck()
    mu = table.mu + table.mu_padding

    for n, (dim, expected) in enumerate(zip(chain.dims, mu)):
        result.expect(dim == expected, f"dim degree {n}: chain {dim}, μ-table {expected}")

    for (k, l), expected in sorted(table.f.items()):
        got = f_via_ranks(chain, k, l)
        result.expect(got == expected, f"f[{k},{l}]: rank route {got}, colon route {expected}")

    for k in range(1, r):
        nullity = chain.dims[k] - rank(chain.maps[k], chain.p)
        result.expect(
            nullity == table_entry(table.f, k, 1),
            f"M_{k}: nullity {nullity}, f[{k},1] = {table_entry(table.f, k, 1)}",
        )
        row = [f_via_ranks(chain, k, l) for l in range(1, r - k + 1)]
        result.expect(row == sorted(row), f"composite nullities from degree {k} decrease: {row}")

    for n in range(r, len(chain.maps)):
        m = chain.maps[n]
        bijective = m.shape[0] == m.shape[1] and rank(m, chain.p) == m.shape[0]
        result.expect(bijective, f"M_{n}: not bijective beyond r = {r}")

    try:
        hilbert_data(table.mu, r, decomposition)
        result.expect(True, "")
    except InconsistencyError as exc:
        result.expect(False, f"Hilbert numerator: {exc}")

    direct = fiber_quotient_length(ideal, a, r, r + 1)
    via_extremal = (r + 1) * table.mu[r] + sum(table.extremal)
    result.expect(
        direct == via_extremal,
        f"λ(F/a^{r + 1}F) = {direct}, (r+1)μ(I^r) + Σ f_k,r-k = {via_extremal}",
    )

    if result.passed:
        logger.info("cross-check passed (%d checks)", result.checks)
    else:
        logger.warning("cross-check failed: %s", "; ".join(result.mismatches))
    return result
