"""Corpus sweeps: many cases, one-line verdicts, aggregate counts.

Cases come from a directory of case files or from a random generator of
monomial cases. Failures are recorded per case and the sweep continues.
"""

import json
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, Field, ValidationError

from engine.analysis import analyze_instance, build_report, check_properties
from engine.case import CaseFile, CaseOptions
from engine.errors import CaseError, FiberConeError, SemigroupError
from engine.semigroup import NumericalSemigroup

logger = logging.getLogger(__name__)

CASE_SUFFIXES = (".yaml", ".yml", ".case")

SweepItem = Union[CaseFile, Path]


class RandomCaseSpec(BaseModel):
    """Parameters of the random monomial-case generator.

    Attributes:
        count: Number of cases
        seed: Master seed; case i gets a seed derived from (seed, i)
        max_semigroup_generators: At most this many semigroup generators (at least 2)
        max_generator: Largest semigroup generator
        max_ideal_generators: At most this many monomial ideal generators
        max_conductor: Semigroups with a larger conductor are redrawn
        two_generated: Draw ideals (t^x, t^y) with y - x outside S
    """
    count: int = Field(200, ge=0)
    seed: int = 0
    max_semigroup_generators: int = Field(5, ge=2)
    max_generator: int = Field(60, ge=3)
    max_ideal_generators: int = Field(5, ge=1)
    max_conductor: int = Field(200, ge=2)
    two_generated: bool = False

    @classmethod
    def parse(cls, text: str) -> "RandomCaseSpec":
        """
        Parse "key=value,key=value".

        Raises:
            CaseError: On a malformed pair, unknown key or invalid value
        """
        data: dict[str, str] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise CaseError(f"random spec entries must be key=value, got {part!r}")
            data[key.strip()] = value.strip()
        unknown = set(data) - set(cls.model_fields)
        if unknown:
            raise CaseError(f"unknown random spec keys: {', '.join(sorted(unknown))}")
        try:
            return cls(**data)
        except ValidationError as exc:
            raise CaseError(f"invalid random spec: {exc.errors()[0]['msg']}") from exc


def derive_seed(master: int, index: int) -> int:
    """Seed of case `index`, stable across runs and platforms."""
    return random.Random(f"{master}:{index}").getrandbits(32)


def random_semigroup(rng: random.Random, spec: RandomCaseSpec) -> NumericalSemigroup:
    while True:
        k = rng.randint(2, spec.max_semigroup_generators)
        gens = sorted(set(rng.randint(2, spec.max_generator) for _ in range(k)))
        if len(gens) < 2 or math.gcd(*gens) != 1:
            continue
        try:
            semigroup = NumericalSemigroup(gens)
        except SemigroupError:
            continue
        if semigroup.conductor <= spec.max_conductor:
            return semigroup


def random_monomial_ideal(rng: random.Random, semigroup: NumericalSemigroup, spec: RandomCaseSpec) -> list[int]:
    """Exponents of a monomial ideal; minimally two-generated when `two_generated` is set."""
    members = semigroup.members_between(1, semigroup.conductor + semigroup.multiplicity)
    if spec.two_generated:
        pairs = [(x, y) for x in members for y in members if x < y and (y - x) not in semigroup]
        if pairs:
            return list(rng.choice(pairs))
    count = rng.randint(1, spec.max_ideal_generators)
    return sorted(set(rng.choice(members) for _ in range(count)))


def generate_cases(spec: RandomCaseSpec) -> list[CaseFile]:
    """Deterministic random monomial cases."""
    cases = []
    for i in range(spec.count):
        seed = derive_seed(spec.seed, i)
        rng = random.Random(seed)
        semigroup = random_semigroup(rng, spec)
        exponents = random_monomial_ideal(rng, semigroup, spec)
        cases.append(
            CaseFile(
                name=f"random-{spec.seed}-{i}",
                semigroup=list(semigroup.minimal_generators),
                ideal=[f"t^{e}" for e in exponents],
                options=CaseOptions(seed=seed),
            )
        )
    return cases


def load_corpus(directory: Union[str, Path]) -> list[Path]:
    """
    Case files of a directory, sorted by name.

    Raises:
        CaseError: If the directory does not exist
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CaseError(f"corpus directory not found: {directory}")
    return sorted(p for p in directory.iterdir() if p.suffix in CASE_SUFFIXES)


class SweepRow(BaseModel):
    """One case of a sweep."""
    name: str
    status: str
    category: Optional[str] = None
    message: Optional[str] = None
    r: Optional[int] = None
    e: Optional[int] = None
    mu: list[int] = Field(default_factory=list)
    cohen_macaulay: Optional[bool] = None
    buchsbaum: Optional[bool] = None
    gorenstein: Optional[bool] = None
    sally: Optional[bool] = None
    verdict: str = ""
    comparison: str = ""
    violations: list[str] = Field(default_factory=list)


class SweepSummary(BaseModel):
    """Rows in input order plus aggregate counts."""
    rows: list[SweepRow] = Field(default_factory=list)
    properties: bool = False

    @property
    def analyzed(self) -> list[SweepRow]:
        return [row for row in self.rows if row.status == "ok"]

    @property
    def counts(self) -> dict[str, int]:
        ok = self.analyzed
        return {
            "total": len(self.rows),
            "analyzed": len(ok),
            "errors": len(self.rows) - len(ok),
            "gorenstein": sum(1 for r in ok if r.gorenstein),
            "cohen_macaulay": sum(1 for r in ok if r.cohen_macaulay),
            "buchsbaum_not_cm": sum(1 for r in ok if r.buchsbaum and not r.cohen_macaulay),
            "not_buchsbaum": sum(1 for r in ok if not r.buchsbaum),
            "sally": sum(1 for r in ok if r.sally),
            "sally_buchsbaum": sum(1 for r in ok if r.sally and r.buchsbaum),
            "violations": sum(len(r.violations) for r in ok),
        }

    def to_json(self) -> str:
        data = self.model_dump()
        data["counts"] = self.counts
        return json.dumps(data, indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"{'case':<28} {'status':<8} verdict", "-" * 72]
        for row in self.rows:
            if row.status == "ok":
                text = row.verdict
                if row.violations:
                    text += f"  [{len(row.violations)} violations]"
            else:
                text = f"{row.category}: {row.message}"
            lines.append(f"{row.name:<28} {row.status:<8} {text}")
        lines.append("-" * 72)
        lines.append(", ".join(f"{k}={v}" for k, v in self.counts.items()))
        return "\n".join(lines)


def run_case(item: SweepItem, properties: bool = False) -> SweepRow:
    """Analyze one corpus item; every categorized failure becomes an error row."""
    name = item.stem if isinstance(item, Path) else item.name
    try:
        case = CaseFile.load(item) if isinstance(item, Path) else item
        name = case.name
        result, info, seed = analyze_instance(case)
        report = build_report(case, result, info, seed)
        violations = check_properties(case, info, seed) if properties else []
    except FiberConeError as exc:
        logger.info("case %s failed: %s", name, exc)
        return SweepRow(name=name, status="error", category=exc.category, message=str(exc))
    return SweepRow(
        name=name,
        status="ok",
        r=report.r,
        e=report.e,
        mu=report.mu,
        cohen_macaulay=report.cohen_macaulay,
        buchsbaum=report.buchsbaum,
        gorenstein=report.gorenstein,
        sally=report.sally,
        verdict=report.summary_line(),
        comparison=report.comparisons.verdict,
        violations=violations,
    )


def sweep(items: list[SweepItem], properties: bool = False, jobs: int = 1) -> SweepSummary:
    """
    Run every item and summarize.

    Args:
        items: Case files (paths) or generated cases
        properties: Also run the identity suite on each analyzed case
        jobs: Worker processes; rows keep input order either way

    Returns:
        The summary, empty for an empty corpus
    """
    worker = partial(run_case, properties=properties)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, items))
    else:
        rows = [worker(item) for item in items]
    summary = SweepSummary(rows=rows, properties=properties)
    logger.info("sweep finished: %s", summary.counts)
    return summary
