"""Analysis reports: a fixed-key JSON document and a human-readable summary."""

from typing import Optional

from pydantic import BaseModel, Field

from engine.comparison import ComparisonResult
from engine.oracle import CrossCheck
from engine.truncation import TruncationInfo


class ReductionInfo(BaseModel):
    """The reduction the tables were computed with."""
    element: str
    reduction_number: int
    source: str
    verified: bool = True


class AnalysisReport(BaseModel):
    """Everything an analysis reports about one case.

    Only emitted when every consistency assertion held. Torsion tables are
    (i, j, value) triples over the full index range, zero values included;
    timing is logged, never reported.
    """
    name: str = "case"
    semigroup: list[int]
    char: int
    ideal: list[str]
    seed: int
    truncation: TruncationInfo
    reduction: ReductionInfo
    r: int
    mu: list[int]
    f: list[tuple[int, int, int]] = Field(default_factory=list)
    alpha_free: list[int]
    alpha_torsion: list[tuple[int, int, int]] = Field(default_factory=list)
    decomposition: str
    hilbert_numerator: list[int]
    e: int
    reg: int
    fp: int
    torsion_length: int
    buchsbaum_constant: int
    cohen_macaulay: bool
    buchsbaum: bool
    gorenstein: bool
    sally: bool
    type: Optional[int] = None
    a_invariant: Optional[int] = None
    canonical_shape: Optional[list[int]] = None
    crosscheck: CrossCheck
    comparisons: ComparisonResult

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.model_validate_json(text)

    def summary_line(self) -> str:
        """One-line verdict used by sweeps."""
        if self.gorenstein:
            kind = "Gorenstein"
        elif self.cohen_macaulay:
            kind = "CM"
        elif self.buchsbaum:
            kind = "Buchsbaum, not CM"
        else:
            kind = "not Buchsbaum"
        return f"r={self.r} e={self.e} μ={self.mu} {kind}"

    def render_text(self) -> str:
        """Banner-style summary for terminals."""
        rule = "=" * 60
        thin = "-" * 60
        lines = [
            rule,
            f"Fiber cone analysis: {self.name}",
            rule,
            f"Semigroup:     <{','.join(str(g) for g in self.semigroup)}>  (char {self.char})",
            f"Ideal:         ({', '.join(self.ideal)})",
            f"Reduction:     {self.reduction.element}  [{self.reduction.source}]",
            f"Truncation:    N={self.truncation.reporting} W={self.truncation.working} "
            f"doublings={self.truncation.doublings}"
            + (" (override)" if self.truncation.override else ""),
            thin,
            f"r = {self.r}",
            f"μ(I^n), n=0..r: {self.mu}",
        ]
        if self.f:
            lines.append("f table:       " + ", ".join(f"f[{k},{l}]={v}" for k, l, v in self.f))
        lines.append(f"α free:        {self.alpha_free}")
        if self.alpha_torsion:
            lines.append(
                "α torsion:     " + ", ".join(f"α[{i},{j}]={v}" for i, j, v in self.alpha_torsion)
            )
        lines += [
            thin,
            "F(I) ≅ " + self.decomposition,
            f"Hilbert numerator Q(x): {self.hilbert_numerator}",
            f"e = {self.e}   reg = {self.reg}   fp = {self.fp}",
            f"torsion length = {self.torsion_length}   Buchsbaum constant = {self.buchsbaum_constant}",
            thin,
            f"Cohen-Macaulay: {self.cohen_macaulay}",
            f"Buchsbaum:      {self.buchsbaum}",
            f"Gorenstein:     {self.gorenstein}",
            f"Sally type:     {self.sally}",
        ]
        if self.cohen_macaulay:
            lines += [
                f"type = {self.type}   a-invariant = {self.a_invariant}",
                f"canonical module shifts: {self.canonical_shape}",
            ]
        lines += [
            thin,
            f"Cross-check:   {'passed' if self.crosscheck.passed else 'FAILED'} "
            f"({self.crosscheck.checks} checks)",
            f"Comparison:    {self.comparisons.verdict}",
            rule,
        ]
        return "\n".join(lines)
