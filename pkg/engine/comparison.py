"""Recompute the tables for several reductions and compare them."""

import logging

from pydantic import BaseModel, Field

from engine.errors import InconsistencyError
from engine.invariants import InvariantTable, build_tables, table_triples
from engine.reduction import ReductionCandidate
from engine.subspace import IdealHandle

logger = logging.getLogger(__name__)


class ReductionTables(BaseModel):
    """Tables of one reduction as reported in a comparison."""
    reduction: str
    source: str
    r: int
    f: list[tuple[int, int, int]]
    alpha_free: list[int]
    alpha_torsion: list[tuple[int, int, int]]

    @classmethod
    def from_table(cls, candidate: ReductionCandidate, table: InvariantTable) -> "ReductionTables":
        return cls(
            reduction=str(candidate.element),
            source=candidate.source,
            r=table.r,
            f=table_triples(table.f),
            alpha_free=table.alpha_free,
            alpha_torsion=table_triples(table.alpha_torsion),
        )


class ComparisonResult(BaseModel):
    """Per-reduction tables and the comparison verdict.

    Attributes:
        skipped: True when fewer than two reductions were available
        notice: Why the comparison was skipped
        reductions: Tables per reduction, the primary one first
        invariants_agree: α_i and f_{k,r-k} agree (always True in an emitted report)
        tables_agree: The full f and α_{i,j} tables agree
        verdict: One-line summary
    """
    skipped: bool = False
    notice: str = ""
    reductions: list[ReductionTables] = Field(default_factory=list)
    invariants_agree: bool = True
    tables_agree: bool = True
    verdict: str = ""


def compare_reductions(
    ideal: IdealHandle,
    primary: ReductionCandidate,
    table: InvariantTable,
    others: list[ReductionCandidate],
    buchsbaum: bool,
) -> ComparisonResult:
    """
    Compare the primary reduction's tables with those of further reductions.

    The reduction number, α_i and f_{k,r-k} must agree for every reduction.
    The full tables must agree when F(I) is Buchsbaum; otherwise disagreement
    is reported in the verdict.

    Raises:
        InconsistencyError: If a reduction-independent invariant differs, or a
            Buchsbaum F(I) has reduction-dependent tables
    """
    flag = "Buchsbaum" if buchsbaum else "not Buchsbaum"
    if not others:
        return ComparisonResult(
            skipped=True,
            notice="single reduction: comparison skipped",
            reductions=[ReductionTables.from_table(primary, table)],
            verdict=f"skipped; {flag}",
        )

    rows = [ReductionTables.from_table(primary, table)]
    tables_agree = True
    for candidate in others:
        if candidate.reduction_number != table.r:
            raise InconsistencyError(
                f"reduction number depends on the reduction: {primary.element} gives {table.r}, "
                f"{candidate.element} gives {candidate.reduction_number}"
            )
        other, _ = build_tables(ideal, candidate.element, candidate.reduction_number)
        if other.alpha_free != table.alpha_free:
            raise InconsistencyError(
                f"free multiplicities depend on the reduction: {table.alpha_free} vs "
                f"{other.alpha_free} for {candidate.element}"
            )
        if other.extremal != table.extremal:
            raise InconsistencyError(
                f"torsion lengths depend on the reduction: {table.extremal} vs "
                f"{other.extremal} for {candidate.element}"
            )
        same = other.f == table.f and other.alpha_torsion == table.alpha_torsion
        if not same:
            logger.info("tables differ between %s and %s", primary.element, candidate.element)
        tables_agree = tables_agree and same
        rows.append(ReductionTables.from_table(candidate, other))

    if buchsbaum and not tables_agree:
        raise InconsistencyError("Buchsbaum fiber cone with reduction-dependent torsion tables")

    if tables_agree:
        verdict = f"reduction-invariant on sampled reductions; {flag}"
    else:
        verdict = f"reduction-dependent; {flag}"
    logger.info("comparison over %d reductions: %s", len(rows), verdict)
    return ComparisonResult(
        reductions=rows,
        invariants_agree=True,
        tables_agree=tables_agree,
        verdict=verdict,
    )
