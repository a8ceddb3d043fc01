"""μ-table, f-table, multiplicities α and the cyclic decomposition of F(I).

For a principal reduction (a) of I with reduction number r, F(I) decomposes
over F(J) = k[a⁰] as

    F(I) ≅ ⊕ F(J)(-i)^{α_i}  ⊕  ⊕ (F(J)/a^j F(J))(-i)^{α_{i,j}}

and the multiplicities are read off the lengths

    f_{k,l} = λ((I^k ∩ (m I^{k+l} : a^l)) / m I^k),  1 <= k <= r-1, 1 <= l <= r-k.
"""

import logging
from dataclasses import dataclass, field

from pydantic import BaseModel, Field

from engine.errors import InconsistencyError
from engine.series import SeriesElement
from engine.subspace import IdealHandle, Subspace

logger = logging.getLogger(__name__)

Table = dict[tuple[int, int], int]

MU_PADDING = 2


def table_entry(table: Table, k: int, l: int) -> int:
    """Entry of an f- or α-table, 0 outside the stored range."""
    return table.get((k, l), 0)


def table_triples(table: Table) -> list[tuple[int, int, int]]:
    """Sorted (i, j, value) triples."""
    return [(i, j, table[(i, j)]) for i, j in sorted(table)]


def mu_table(ideal: IdealHandle, r: int, pad: int = MU_PADDING) -> tuple[list[int], list[int]]:
    """
    μ(I^n) for n = 0..r, plus `pad` further values that must equal μ(I^r).

    Raises:
        InconsistencyError: If the padding values differ from μ(I^r)
    """
    mu = [ideal.mu(n) for n in range(r + 1)]
    padding = [ideal.mu(n) for n in range(r + 1, r + 1 + pad)]
    if any(m != mu[r] for m in padding):
        raise InconsistencyError(
            f"μ(I^n) does not stabilize after r={r}: {mu} then {padding}"
        )
    return mu, padding


def f_entry(ideal: IdealHandle, a_powers: list[SeriesElement], k: int, l: int) -> int:
    colon = ideal.maximal_product(k + l).colon(a_powers[l])
    piece = ideal.power(k).intersect(colon)
    return piece.quotient_length(ideal.maximal_product(k))


def a_powers(a: SeriesElement, top: int) -> list[SeriesElement]:
    """[a^0, a^1, ..., a^top]."""
    powers = [a.ring.one()]
    for _ in range(top):
        powers.append(powers[-1] * a)
    return powers


def f_table(ideal: IdealHandle, a: SeriesElement, r: int) -> Table:
    """
    The table f_{k,l}, empty when r <= 1.

    Raises:
        InconsistencyError: If a row fails to be non-decreasing in l
    """
    powers = a_powers(a, max(r, 1))
    table: Table = {}
    for k in range(1, r):
        for l in range(1, r - k + 1):
            table[(k, l)] = f_entry(ideal, powers, k, l)
        row = [table[(k, l)] for l in range(1, r - k + 1)]
        if row != sorted(row):
            raise InconsistencyError(f"f-table row k={k} is not non-decreasing: {row}")
    logger.debug("f-table for a=%s: %s", a, table)
    return table


def torsion_pieces(ideal: IdealHandle, a: SeriesElement, r: int, f: Table) -> list[Subspace]:
    """
    Lifts T_k = I^k ∩ (m I^r : a^{r-k}) of the torsion submodule, k = 1..r-1.

    Raises:
        InconsistencyError: If λ(T_k / m I^k) differs from f_{k,r-k}
    """
    pieces = []
    powers = a_powers(a, max(r, 1))
    for k in range(1, r):
        piece = ideal.power(k).intersect(ideal.maximal_product(r).colon(powers[r - k]))
        length = piece.quotient_length(ideal.maximal_product(k))
        if length != table_entry(f, k, r - k):
            raise InconsistencyError(
                f"torsion piece T_{k} has length {length}, f_{{{k},{r - k}}} = {table_entry(f, k, r - k)}"
            )
        pieces.append(piece)
    return pieces


def lambda_region(k: int, l: int) -> list[tuple[int, int]]:
    """Index set {(i, j) : 1 <= i <= k, k-i+1 <= j <= k-i+l} summed by f_{k,l}."""
    return [(i, j) for i in range(1, k + 1) for j in range(k - i + 1, k - i + l + 1)]


def alpha_torsion(f: Table, r: int) -> Table:
    """
    Torsion multiplicities α_{k,l} = (f_{k,l} - f_{k,l-1}) - (f_{k-1,l+1} - f_{k-1,l}).

    The inversion is re-substituted into f_{k,l} = Σ_Λ α_{i,j} on every call.

    Raises:
        InconsistencyError: On a negative multiplicity or a failed round trip
    """
    alpha: Table = {}
    for k in range(1, r):
        for l in range(1, r - k + 1):
            value = (table_entry(f, k, l) - table_entry(f, k, l - 1)) - (
                table_entry(f, k - 1, l + 1) - table_entry(f, k - 1, l)
            )
            if value < 0:
                raise InconsistencyError(f"negative torsion multiplicity α_{{{k},{l}}} = {value}")
            alpha[(k, l)] = value

    for (k, l), expected in f.items():
        total = sum(table_entry(alpha, i, j) for i, j in lambda_region(k, l))
        if total != expected:
            raise InconsistencyError(
                f"α-table does not reproduce f_{{{k},{l}}}: Σ α = {total}, f = {expected}"
            )
    return alpha


def alpha_free(mu: list[int], f: Table, r: int) -> list[int]:
    """
    Free multiplicities α_0..α_r.

    α_i = μ(I^i) - μ(I^{i-1}) - (f_{i,r-i} - f_{i-1,r-i+1}) with f_{0,r} = f_{r,0} = 0.

    Raises:
        InconsistencyError: If some α_i < 0, α_0 != 1 or α_r = 0
    """
    def extremal(i: int) -> int:
        return table_entry(f, i, r - i) if 1 <= i <= r - 1 else 0

    alpha = [1]
    for i in range(1, r + 1):
        alpha.append(mu[i] - mu[i - 1] - (extremal(i) - extremal(i - 1)))
    if mu[0] != 1:
        raise InconsistencyError(f"μ(I^0) must be 1, got {mu[0]}")
    if any(x < 0 for x in alpha):
        raise InconsistencyError(f"negative free multiplicity in {alpha}")
    if alpha[r] == 0:
        raise InconsistencyError(f"α_r vanishes for r={r}: {alpha}")
    return alpha


class Decomposition(BaseModel):
    """Cyclic decomposition of F(I) over F(J).

    Attributes:
        free: (shift, multiplicity) pairs of the free summands F(J)(-shift)
        torsion: (shift d, order c, multiplicity) triples of (F(J)/a^c F(J))(-d)
    """
    free: list[tuple[int, int]] = Field(default_factory=list)
    torsion: list[tuple[int, int, int]] = Field(default_factory=list)

    @classmethod
    def from_alphas(cls, free: list[int], torsion: Table) -> "Decomposition":
        return cls(
            free=[(i, m) for i, m in enumerate(free) if m],
            torsion=[(i, j, m) for i, j, m in table_triples(torsion) if m],
        )

    @property
    def rank(self) -> int:
        """e: number of free summands."""
        return sum(m for _, m in self.free)

    @property
    def free_shifts(self) -> list[int]:
        """b_1 <= ... <= b_e."""
        return [b for b, m in self.free for _ in range(m)]

    def series_numerator(self, r: int) -> list[int]:
        """Coefficients of Σ x^{b_i} + Σ (x^{d_j} - x^{d_j + c_j}) up to degree r."""
        coefficients = [0] * (r + 1)
        for b, m in self.free:
            coefficients[b] += m
        for d, c, m in self.torsion:
            coefficients[d] += m
            if d + c <= r:
                coefficients[d + c] -= m
        return coefficients

    def check(self, mu: list[int], r: int) -> None:
        """
        Structural invariants: e = μ(I^r), b_e = r and c_j + d_j <= r.

        Raises:
            InconsistencyError: If one of them fails
        """
        if self.rank != mu[r]:
            raise InconsistencyError(f"free rank {self.rank} differs from μ(I^r) = {mu[r]}")
        if self.free_shifts[-1] != r:
            raise InconsistencyError(f"largest free shift {self.free_shifts[-1]} differs from r = {r}")
        for d, c, _ in self.torsion:
            if c + d > r:
                raise InconsistencyError(f"torsion summand (d={d}, c={c}) exceeds r = {r}")

    def render(self, name: str = "F(J)") -> str:
        """Decomposition in ⊕-notation, e.g. "F(J) ⊕ F(J)(-1) ⊕ (F(J)/aF(J))(-1)"."""
        parts = []
        for b, m in self.free:
            text = name if b == 0 else f"{name}({-b})"
            parts.append(text if m == 1 else f"{text}^{m}")
        for d, c, m in self.torsion:
            power = "a" if c == 1 else f"a^{c}"
            text = f"({name}/{power}{name})({-d})"
            parts.append(text if m == 1 else f"{text}^{m}")
        return " ⊕ ".join(parts)


@dataclass
class InvariantTable:
    """All tables of one (ideal, reduction) pair."""

    r: int
    mu: list[int]
    mu_padding: list[int]
    f: Table
    alpha_free: list[int]
    alpha_torsion: Table
    torsion_piece_lengths: list[int] = field(default_factory=list)

    @property
    def torsion_length(self) -> int:
        return sum(self.torsion_piece_lengths)

    @property
    def buchsbaum_constant(self) -> int:
        """C = Σ_k f_{k,1} = λ(F/aF) - e(aF, F)."""
        return sum(table_entry(self.f, k, 1) for k in range(1, self.r))

    @property
    def extremal(self) -> list[int]:
        """f_{k,r-k} for k = 1..r-1."""
        return [table_entry(self.f, k, self.r - k) for k in range(1, self.r)]

    def decomposition(self) -> Decomposition:
        return Decomposition.from_alphas(self.alpha_free, self.alpha_torsion)


def build_tables(ideal: IdealHandle, a: SeriesElement, r: int) -> tuple[InvariantTable, list[Subspace]]:
    """
    Compute every table for the reduction a and return it with the torsion lifts.

    Raises:
        InconsistencyError: From any of the table consistency checks
    """
    mu, padding = mu_table(ideal, r)
    f = f_table(ideal, a, r)
    torsion = alpha_torsion(f, r)
    free = alpha_free(mu, f, r)
    pieces = torsion_pieces(ideal, a, r, f)
    table = InvariantTable(
        r=r,
        mu=mu,
        mu_padding=padding,
        f=f,
        alpha_free=free,
        alpha_torsion=torsion,
        torsion_piece_lengths=[table_entry(f, k, r - k) for k in range(1, r)],
    )
    table.decomposition().check(mu, r)
    logger.debug("tables for a=%s: μ=%s α=%s α_tor=%s", a, mu, free, torsion)
    return table, pieces
