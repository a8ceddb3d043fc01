"""Identity suite over a seeded corpus of random monomial cases.

Caps are kept small so the default run is quick; the full-size corpus is
marked slow and runs with `pytest -m slow`, or through `cli.py sweep --random
count=200 --properties`.
"""

import pytest

from engine.analysis import analyze_instance, build_report, check_properties
from engine.case import CaseFile
from engine.sweep import RandomCaseSpec, generate_cases, sweep

CORPUS = generate_cases(
    RandomCaseSpec(
        count=12,
        seed=7,
        max_semigroup_generators=4,
        max_generator=14,
        max_ideal_generators=3,
        max_conductor=40,
    )
)

TWO_GENERATED = generate_cases(
    RandomCaseSpec(
        count=6,
        seed=11,
        max_semigroup_generators=3,
        max_generator=12,
        max_conductor=30,
        two_generated=True,
    )
)


@pytest.mark.parametrize("case", CORPUS, ids=lambda c: c.name)
def test_random_case_satisfies_identities(case: CaseFile) -> None:
    result, info, seed = analyze_instance(case)
    report = build_report(case, result, info, seed)
    assert report.crosscheck.passed
    if report.buchsbaum:
        assert report.comparisons.tables_agree
    assert check_properties(case, info, seed) == []


@pytest.mark.parametrize("case", TWO_GENERATED, ids=lambda c: c.name)
def test_two_generated_case(case: CaseFile) -> None:
    """Minimally two-generated ideals have μ(I) = 2 and satisfy every identity."""
    result, info, seed = analyze_instance(case)
    report = build_report(case, result, info, seed)
    assert report.mu[1] == 2
    assert check_properties(case, info, seed) == []


# =============================================================================
# Full-size corpus
# =============================================================================


@pytest.mark.slow
def test_full_random_corpus() -> None:
    """200 cases with generators up to 60, every identity holding."""
    summary = sweep(generate_cases(RandomCaseSpec(count=200)), properties=True, jobs=4)
    assert summary.counts["total"] == 200
    assert summary.counts["errors"] == 0
    assert summary.counts["violations"] == 0


@pytest.mark.slow
def test_full_two_generated_corpus() -> None:
    summary = sweep(generate_cases(RandomCaseSpec(count=100, two_generated=True)), properties=True, jobs=4)
    assert summary.counts["errors"] == 0
    assert summary.counts["violations"] == 0
