"""Exact ideal arithmetic in k[[t^S]] on windowed echelon bases.

Every Subspace is an ideal U of A = k[[t^S]] stored as

* a tail degree d: every monomial t^s with s in S and s > d lies in U, and
  d itself is either -1 (U = A) or the largest member of S outside v(U);
* reduced row echelon rows over the coordinates S ∩ [v(U), d], pivots at the
  lowest exponent of each row.

This form is canonical, so equality is a comparison of tails and rows. Sums,
products, intersections and colons work on finite windows and are exact; the
only approximation is the ceiling N of the RingContext, which raises
TruncationError rather than cutting a computation short.
"""

import logging
import threading
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from engine.echelon import intersect_rowspaces, left_kernel, normal_form, rref
from engine.errors import CaseError, InconsistencyError, TruncationError
from engine.semigroup import NumericalSemigroup
from engine.series import SeriesElement, SeriesRing

logger = logging.getLogger(__name__)

_EMPTY = np.zeros(0, dtype=np.int64)


class RingContext:
    """Semigroup, field, reporting degree N and working degree W of one analysis run.

    The context also tracks the highest window degree any subspace needed,
    which is what truncation certification reports.
    """

    def __init__(
        self,
        semigroup: NumericalSemigroup,
        p: int,
        truncation: int,
        working_degree: Optional[int] = None,
    ) -> None:
        self.semigroup = semigroup
        self.truncation = truncation
        self.series = SeriesRing(
            semigroup, p, truncation if working_degree is None else working_degree
        )
        self.p = self.series.p
        self.high_water = -1
        self._columns: dict[tuple[int, int], np.ndarray] = {}
        self._lock = threading.Lock()
        self._unit: Optional[Subspace] = None
        self._maximal: Optional[Subspace] = None

    @property
    def working_degree(self) -> int:
        return self.series.working_degree

    def claim(self, degree: int) -> None:
        """Record that a window reaches `degree`; refuse anything above N."""
        if degree > self.truncation:
            raise TruncationError(
                f"increase truncation: a window reaches degree {degree} above N={self.truncation}"
            )
        if degree > self.high_water:
            self.high_water = degree

    def columns(self, low: int, high: int) -> np.ndarray:
        """Members of S in [low, high] as an int64 array (cached)."""
        key = (low, high)
        cols = self._columns.get(key)
        if cols is None:
            cols = np.array(self.semigroup.members_between(low, high), dtype=np.int64)
            with self._lock:
                self._columns[key] = cols
        return cols

    def parse(self, text: str) -> SeriesElement:
        return self.series.parse(text)

    def monomial(self, exponent: int) -> SeriesElement:
        return self.series.monomial(exponent)

    @property
    def unit(self) -> "Subspace":
        """The unit ideal A."""
        if self._unit is None:
            self._unit = Subspace(self, -1, _EMPTY, np.zeros((0, 0), dtype=np.int64), ())
        return self._unit

    @property
    def maximal_generators(self) -> list[SeriesElement]:
        return [self.monomial(g) for g in self.semigroup.minimal_generators]

    @property
    def maximal(self) -> "Subspace":
        """The maximal ideal m = (t^s : s in S, s > 0)."""
        if self._maximal is None:
            self._maximal = self.unit.times(self.maximal_generators)
        return self._maximal

    def ideal(self, elements: Sequence[SeriesElement]) -> "Subspace":
        """Span of the ideal generated by `elements`."""
        return self.unit.times(elements)


def _shift_multiply(
    basis: np.ndarray,
    source: np.ndarray,
    g: SeriesElement,
    target: np.ndarray,
    bound: int,
    p: int,
) -> np.ndarray:
    """Multiply each row (over `source` exponents) by g, keep exponents <= bound, write over `target`."""
    out = np.zeros((basis.shape[0], len(target)), dtype=np.int64)
    if basis.shape[0] == 0 or len(source) == 0:
        return out
    for e, c in g.items():
        shifted = source + e
        mask = shifted <= bound
        if not mask.any():
            break
        idx = np.searchsorted(target, shifted[mask])
        out[:, idx] = (out[:, idx] + c * basis[:, mask]) % p
    return out


class Subspace:
    """Canonical exact representation of an ideal of A (see module docstring)."""

    __slots__ = ("ctx", "tail", "columns", "rows", "pivots", "_pivot_index")

    def __init__(
        self,
        ctx: RingContext,
        tail: int,
        columns: np.ndarray,
        rows: np.ndarray,
        pivots: tuple[int, ...],
    ) -> None:
        self.ctx = ctx
        self.tail = tail
        self.columns = columns
        self.rows = rows
        self.pivots = pivots
        self._pivot_index = [int(i) for i in np.searchsorted(columns, pivots)] if pivots else []

    @classmethod
    def from_vectors(
        cls,
        ctx: RingContext,
        columns: np.ndarray,
        vectors: np.ndarray,
        bound: int,
    ) -> "Subspace":
        """
        Canonical subspace spanned by `vectors` plus every monomial above `bound`.

        Args:
            ctx: Ring context
            columns: All members of S in some window [low, bound], ascending
            vectors: Matrix over `columns`
            bound: Degree above which all monomials are included

        Returns:
            The canonical Subspace
        """
        ctx.claim(bound)
        semigroup = ctx.semigroup
        if len(columns) and np.asarray(vectors).size:
            rows, pivot_cols = rref(vectors, ctx.p)
        else:
            rows, pivot_cols = np.zeros((0, len(columns)), dtype=np.int64), []
        pivot_exps = [int(columns[i]) for i in pivot_cols]
        position = {e: i for i, e in enumerate(pivot_exps)}

        d = bound
        while d >= 0:
            if d not in semigroup:
                d -= 1
            elif d in position:
                d -= 1
            else:
                break

        keep = [i for i, e in enumerate(pivot_exps) if e <= d]
        if not keep:
            return cls(ctx, d, _EMPTY, np.zeros((0, 0), dtype=np.int64), ())
        start = int(np.searchsorted(columns, pivot_exps[keep[0]]))
        stop = int(np.searchsorted(columns, d, side="right"))
        return cls(
            ctx,
            d,
            columns[start:stop],
            rows[keep][:, start:stop],
            tuple(pivot_exps[i] for i in keep),
        )

    # ------------------------------------------------------------------
    # Basic data
    # ------------------------------------------------------------------

    @property
    def valuation(self) -> int:
        """Smallest exponent in v(U)."""
        if self.pivots:
            return self.pivots[0]
        return self.ctx.semigroup.next_member(self.tail)

    def is_unit(self) -> bool:
        return self.tail == -1

    def count_up_to(self, degree: int) -> int:
        """Number of values of U that are <= degree (degree >= tail)."""
        return len(self.pivots) + len(self.ctx.columns(self.tail + 1, degree))

    def pivots_up_to(self, degree: int) -> list[int]:
        """v(U) ∩ [0, degree] in ascending order."""
        below = [e for e in self.pivots if e <= degree]
        return below + [int(s) for s in self.ctx.columns(self.tail + 1, degree)]

    def dimension(self, degree: int) -> int:
        return len(self.pivots_up_to(degree))

    def _check(self, other: "Subspace") -> None:
        if self.ctx is not other.ctx:
            raise InconsistencyError("subspaces from different ring contexts")

    def vectors_over(self, target: np.ndarray, bound: int) -> np.ndarray:
        """
        Spanning rows of U modulo monomials above `bound`, written over `target`.

        For bound >= tail the rows are U's echelon rows followed by the
        monomials t^s, tail < s <= bound; below the tail the echelon rows are
        cut at `bound`. `target` must contain every member of S in [v(U), bound].
        """
        if bound >= self.tail:
            extra = self.ctx.columns(self.tail + 1, bound)
        else:
            extra = _EMPTY
        out = np.zeros((len(self.pivots) + len(extra), len(target)), dtype=np.int64)
        if self.pivots:
            mask = self.columns <= bound
            idx = np.searchsorted(target, self.columns[mask])
            out[: len(self.pivots), idx] = self.rows[:, mask]
        if len(extra):
            idx = np.searchsorted(target, extra)
            out[np.arange(len(self.pivots), len(out)), idx] = 1
        return out

    def _echelon_over(self, target: np.ndarray, bound: int) -> tuple[np.ndarray, list[int]]:
        """Echelon rows of U up to `bound` (>= tail) with their pivot positions in `target`."""
        matrix = self.vectors_over(target, bound)
        pivots = self.pivots_up_to(bound)
        return matrix, [int(i) for i in np.searchsorted(target, pivots)]

    # ------------------------------------------------------------------
    # Lattice operations
    # ------------------------------------------------------------------

    def times(self, elements: Iterable[SeriesElement]) -> "Subspace":
        """
        Product U·(g_1, ..., g_k).

        Args:
            elements: Generators of the multiplying ideal; zero entries are ignored

        Raises:
            CaseError: If every element is zero
        """
        gens = [g for g in elements if not g.is_zero()]
        if not gens:
            raise CaseError("zero ideal: every generator vanishes")
        for g in gens:
            if g.ring is not self.ctx.series and g.ring != self.ctx.series:
                raise InconsistencyError(f"element {g} belongs to another ring context")
        v_min = min(int(g.valuation) for g in gens)
        base = max(self.tail, self.ctx.semigroup.conductor - 1)
        bound = base + v_min
        self.ctx.claim(bound)

        low = self.valuation
        source = self.ctx.columns(low, base)
        basis = self.vectors_over(source, base)
        target = self.ctx.columns(low + v_min, bound)
        blocks = [_shift_multiply(basis, source, g, target, bound, self.ctx.p) for g in gens]
        return Subspace.from_vectors(self.ctx, target, np.vstack(blocks), bound)

    def times_maximal(self) -> "Subspace":
        """The product m·U."""
        return self.times(self.ctx.maximal_generators)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        bound = min(self.tail, other.tail)
        low = min(self.valuation, other.valuation)
        target = self.ctx.columns(low, bound)
        stacked = np.vstack([self.vectors_over(target, bound), other.vectors_over(target, bound)])
        return Subspace.from_vectors(self.ctx, target, stacked, bound)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        bound = max(self.tail, other.tail)
        self.ctx.claim(bound)
        low = min(self.valuation, other.valuation)
        target = self.ctx.columns(low, bound)
        both = intersect_rowspaces(
            self.vectors_over(target, bound), other.vectors_over(target, bound), self.ctx.p
        )
        return Subspace.from_vectors(self.ctx, target, both, bound)

    __and__ = intersect

    def contains(self, other: "Subspace") -> bool:
        """True if other ⊆ self."""
        self._check(other)
        bound = max(self.tail, other.tail)
        low = min(self.valuation, other.valuation)
        target = self.ctx.columns(low, bound)
        theirs = other.vectors_over(target, bound)
        if theirs.shape[0] == 0:
            return True
        mine, pivots = self._echelon_over(target, bound)
        residue = normal_form(theirs, mine, pivots, self.ctx.p)
        return not residue.any()

    def colon(self, g: SeriesElement) -> "Subspace":
        """
        The colon ideal (U : g) = {x in A : g·x in U}.

        Candidates x live on S ∩ [v(U) − v(g), d − v(g)]; everything above
        d − v(g) lands in the tail of U.
        """
        if g.is_zero():
            raise CaseError("colon by the zero element")
        v_g = int(g.valuation)
        tail = self.tail - v_g
        if tail < 0:
            return self.ctx.unit
        low = max(0, self.valuation - v_g)
        domain = self.ctx.columns(low, tail)
        if len(domain) == 0:
            return Subspace.from_vectors(self.ctx, domain, np.zeros((0, 0), dtype=np.int64), tail)
        images = _shift_multiply(
            np.eye(len(domain), dtype=np.int64), domain, g, self.columns, self.tail, self.ctx.p
        )
        residue = normal_form(images, self.rows, self._pivot_index, self.ctx.p)
        kernel = left_kernel(residue, self.ctx.p)
        return Subspace.from_vectors(self.ctx, domain, kernel, tail)

    def colon_ideal(self, elements: Sequence[SeriesElement]) -> "Subspace":
        """(U : J) as the intersection of the element colons over J's generators."""
        gens = [g for g in elements if not g.is_zero()]
        if not gens:
            raise CaseError("colon by the zero ideal")
        return reduce(Subspace.intersect, (self.colon(g) for g in gens))

    def quotient_length(self, sub: "Subspace") -> int:
        """
        Length of U/V as a k-vector space.

        Raises:
            InconsistencyError: If V is not contained in U
        """
        if not self.contains(sub):
            raise InconsistencyError(
                f"quotient length needs containment: tails {self.tail}/{sub.tail}, "
                f"valuations {self.valuation}/{sub.valuation}"
            )
        bound = max(self.tail, sub.tail)
        return self.count_up_to(bound) - sub.count_up_to(bound)

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return (
            self.tail == other.tail
            and self.pivots == other.pivots
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.tail, self.pivots, self.rows.tobytes()))

    def __repr__(self) -> str:
        return (
            f"Subspace(valuation={self.valuation}, tail={self.tail}, "
            f"rows={len(self.pivots)})"
        )


class IdealHandle:
    """An ideal I of A with cached powers I^n and products m·I^n.

    Caches are filled sequentially under a lock, so concurrent readers of one
    handle always see complete entries.
    """

    def __init__(self, ctx: RingContext, generators: Sequence[SeriesElement]) -> None:
        gens = tuple(g for g in generators if not g.is_zero())
        if not gens:
            raise CaseError("zero ideal: every generator vanishes")
        self.ctx = ctx
        self.generators = gens
        self.valuation = min(int(g.valuation) for g in gens)
        self._powers: dict[int, Subspace] = {0: ctx.unit}
        self._maximal: dict[int, Subspace] = {}
        self._lock = threading.RLock()

    def power(self, n: int) -> Subspace:
        """I^n, with I^0 = A."""
        if n < 0:
            raise ValueError(f"power needs n >= 0, got {n}")
        with self._lock:
            top = max(self._powers)
            for k in range(top + 1, n + 1):
                self._powers[k] = self._powers[k - 1].times(self.generators)
                logger.debug(
                    "I^%d: valuation %d, tail %d, %d rows",
                    k, self._powers[k].valuation, self._powers[k].tail, len(self._powers[k].pivots),
                )
            return self._powers[n]

    def maximal_product(self, n: int) -> Subspace:
        """m·I^n."""
        with self._lock:
            if n not in self._maximal:
                self._maximal[n] = self.power(n).times_maximal()
            return self._maximal[n]

    def mu(self, n: int) -> int:
        """Minimal number of generators of I^n, λ(I^n/mI^n)."""
        return self.power(n).quotient_length(self.maximal_product(n))

    def contains_element(self, g: SeriesElement) -> bool:
        return self.power(1).contains(self.ctx.ideal([g]))

    def __repr__(self) -> str:
        return "IdealHandle(" + ", ".join(str(g) for g in self.generators) + ")"
