"""The analysis pipeline for one case.

certify truncation -> find or verify reductions -> tables -> classification
-> rank-route cross-check -> reduction comparison -> report
"""

import logging
import random
import time
from dataclasses import dataclass
from typing import Optional

from engine.case import CaseFile
from engine.classify import Classification, HilbertData, classify, hilbert_data
from engine.comparison import ComparisonResult, compare_reductions
from engine.errors import CaseError, InconsistencyError, TruncationError
from engine.identities import property_violations
from engine.invariants import Decomposition, InvariantTable, build_tables, table_triples
from engine.oracle import CrossCheck, cross_check
from engine.reduction import (
    ReductionCandidate,
    find_reduction,
    random_reductions,
    verify_reduction,
)
from engine.report import AnalysisReport, ReductionInfo
from engine.semigroup import NumericalSemigroup
from engine.series import SeriesRing
from engine.subspace import IdealHandle, RingContext
from engine.truncation import TruncationInfo, certify_stability, initial_truncation

logger = logging.getLogger(__name__)

# Working degree used only to read exponents and valuations of the input.
_PROBE_DEGREE = 1 << 30


@dataclass
class InstanceResult:
    """Everything computed for one case at one reporting degree."""

    ideal: IdealHandle
    candidate: ReductionCandidate
    table: InvariantTable
    decomposition: Decomposition
    classification: Classification
    hilbert: HilbertData
    crosscheck: CrossCheck
    comparison: ComparisonResult

    @property
    def ctx(self) -> RingContext:
        return self.ideal.ctx

    def fingerprint(self) -> tuple:
        """Every reported number, independent of how far element terms were kept."""
        rows = [(t.r, t.f, t.alpha_free, t.alpha_torsion) for t in self.comparison.reductions]
        return (
            self.candidate.reduction_number,
            tuple(self.table.mu),
            tuple(self.table.mu_padding),
            tuple(table_triples(self.table.f)),
            tuple(self.table.alpha_free),
            tuple(table_triples(self.table.alpha_torsion)),
            self.classification.model_dump_json(),
            tuple(self.hilbert.numerator),
            self.crosscheck.passed,
            self.crosscheck.checks,
            repr(rows),
            self.comparison.tables_agree,
            self.comparison.verdict,
        )


@dataclass(frozen=True)
class CaseInputs:
    """Semigroup and degree data shared by every run of a case."""

    semigroup: NumericalSemigroup
    p: int
    valuation_bound: int
    initial: int


def case_inputs(case: CaseFile) -> CaseInputs:
    """
    Validate the case and derive the starting truncation.

    Raises:
        SemigroupError: For invalid semigroup generators
        CaseError: For unparseable elements or a zero ideal
    """
    semigroup = NumericalSemigroup(case.semigroup)
    probe = SeriesRing(semigroup, case.char, _PROBE_DEGREE)
    ideal = [probe.parse(text) for text in case.ideal]
    reductions = [probe.parse(text) for text in case.reductions]
    if all(g.is_zero() for g in ideal):
        raise CaseError("zero ideal: every generator vanishes")
    exponents = [e for g in ideal for e in g.terms]
    valuation_bound = max(int(g.valuation) for g in ideal + reductions if not g.is_zero())
    return CaseInputs(
        semigroup=semigroup,
        p=case.char,
        valuation_bound=valuation_bound,
        initial=initial_truncation(semigroup, exponents, valuation_bound),
    )


def run_instance(
    case: CaseFile,
    inputs: CaseInputs,
    truncation: int,
    seed: int,
    comparisons: int,
) -> tuple[InstanceResult, int]:
    """
    Analyze a case at reporting degree `truncation`.

    Returns:
        (result, highest window degree used)

    Raises:
        TruncationError: If some window reaches past `truncation`
        NoReductionError: If no reduction verifies
        InconsistencyError: If any consistency assertion fails
    """
    options = case.options
    ctx = RingContext(
        inputs.semigroup,
        inputs.p,
        truncation,
        working_degree=truncation + inputs.valuation_bound,
    )
    ideal = IdealHandle(ctx, [ctx.parse(text) for text in case.ideal])
    rng = random.Random(seed)

    supplied = [
        verify_reduction(ideal, ctx.parse(text), options.r_bound) for text in case.reductions
    ]
    if supplied:
        primary = supplied[0]
    else:
        primary = find_reduction(ideal, options.attempts, options.r_bound, rng)
    others = supplied[1:] + random_reductions(ideal, comparisons, options.r_bound, rng)

    a, r = primary.element, primary.reduction_number
    table, pieces = build_tables(ideal, a, r)
    decomposition = table.decomposition()
    classification = classify(ideal, a, table, pieces)
    hilbert = hilbert_data(table.mu, r, decomposition)
    check = cross_check(ideal, a, table, decomposition)
    if not check.passed:
        raise InconsistencyError("cross-check failed: " + "; ".join(check.mismatches))
    comparison = compare_reductions(ideal, primary, table, others, classification.buchsbaum)

    result = InstanceResult(
        ideal=ideal,
        candidate=primary,
        table=table,
        decomposition=decomposition,
        classification=classification,
        hilbert=hilbert,
        crosscheck=check,
        comparison=comparison,
    )
    return result, ctx.high_water


def analyze_instance(
    case: CaseFile,
    seed: Optional[int] = None,
    comparisons: Optional[int] = None,
    truncation: Optional[int] = None,
) -> tuple[InstanceResult, TruncationInfo, int]:
    """
    Run the certified pipeline and return the raw result.

    Arguments left as None fall back to the case options.

    Returns:
        (result, truncation info, seed used)
    """
    options = case.options
    seed = options.seed if seed is None else seed
    comparisons = options.comparisons if comparisons is None else comparisons
    override = options.truncation if truncation is None else truncation
    inputs = case_inputs(case)

    def run(n: int) -> tuple[InstanceResult, int]:
        return run_instance(case, inputs, n, seed, comparisons)

    result, n, doublings = certify_stability(
        run,
        inputs.initial,
        InstanceResult.fingerprint,
        override=override,
        max_doublings=options.max_doublings,
    )
    info = TruncationInfo(
        reporting=n,
        working=n + inputs.valuation_bound,
        doublings=doublings,
        override=override is not None,
    )
    return result, info, seed


def build_report(case: CaseFile, result: InstanceResult, info: TruncationInfo, seed: int) -> AnalysisReport:
    table = result.table
    c = result.classification
    return AnalysisReport(
        name=case.name,
        semigroup=list(case.semigroup),
        char=case.char,
        ideal=list(case.ideal),
        seed=seed,
        truncation=info,
        reduction=ReductionInfo(
            element=str(result.candidate.element),
            reduction_number=result.candidate.reduction_number,
            source=result.candidate.source,
            verified=result.candidate.verified,
        ),
        r=table.r,
        mu=table.mu,
        f=table_triples(table.f),
        alpha_free=table.alpha_free,
        alpha_torsion=table_triples(table.alpha_torsion),
        decomposition=result.decomposition.render(),
        hilbert_numerator=result.hilbert.numerator,
        e=c.e,
        reg=c.reg,
        fp=c.fp,
        torsion_length=c.torsion_length,
        buchsbaum_constant=c.buchsbaum_constant,
        cohen_macaulay=c.cohen_macaulay,
        buchsbaum=c.buchsbaum,
        gorenstein=c.gorenstein,
        sally=c.sally,
        type=c.type,
        a_invariant=c.a_invariant,
        canonical_shape=c.canonical_shape,
        crosscheck=result.crosscheck,
        comparisons=result.comparison,
    )


def analyze(
    case: CaseFile,
    seed: Optional[int] = None,
    comparisons: Optional[int] = None,
    truncation: Optional[int] = None,
) -> AnalysisReport:
    """
    Analyze a case end to end.

    Args:
        case: The case to analyze
        seed: Overrides the case seed
        comparisons: Overrides the number of random comparison reductions
        truncation: Overrides the reporting degree N (no doubling)

    Returns:
        The report; identical inputs give identical reports

    Raises:
        FiberConeError: Any categorized failure of the pipeline
    """
    started = time.perf_counter()
    result, info, seed = analyze_instance(case, seed, comparisons, truncation)
    report = build_report(case, result, info, seed)
    logger.info("analysis of %s took %.3fs", case.name, time.perf_counter() - started)
    return report


def check_properties(
    case: CaseFile,
    info: TruncationInfo,
    seed: int,
    max_doublings: int = 4,
) -> list[str]:
    """
    Run the identity suite on an analyzed case.

    The suite needs a few powers beyond those of the analysis, so the case is
    re-run from twice the certified degree with the same seed (and hence the
    same reduction), doubling on TruncationError.

    Raises:
        TruncationError: If the suite does not fit within the doubling budget
    """
    inputs = case_inputs(case)
    n = 2 * max(info.reporting, 1)
    for _ in range(max_doublings + 1):
        try:
            result, _ = run_instance(case, inputs, n, seed, comparisons=0)
            return property_violations(
                result.ideal,
                result.candidate.element,
                result.table,
                result.classification,
                result.decomposition,
            )
        except TruncationError:
            logger.debug("property suite needs more than N=%d, doubling", n)
            n *= 2
    raise TruncationError(f"truncation did not certify: property suite still short at N={n // 2}")
