"""Registry of built-in fixture cases with their expected report values.

Fixtures are registered by name and run by the `selftest` command, the MCP
server and the test suite.
"""

from typing import Any

from pydantic import BaseModel, Field

from engine.case import CaseFile
from engine.report import AnalysisReport


class Fixture(BaseModel):
    """A case together with the report values it must produce.

    Attributes:
        name: Registry key
        description: What the fixture exercises
        case: The case to analyze
        expected: Report field -> value; `comparison_verdict` checks the
            comparison verdict string
    """
    name: str
    description: str = ""
    case: CaseFile
    expected: dict[str, Any] = Field(default_factory=dict)

    def check(self, report: AnalysisReport) -> list[str]:
        """Mismatches between the report and the expected values."""
        actual = report.model_dump()
        actual["comparison_verdict"] = report.comparisons.verdict
        mismatches = []
        for key, want in self.expected.items():
            got = actual.get(key)
            if _normalize(got) != _normalize(want):
                mismatches.append(f"{self.name}: {key} = {got!r}, expected {want!r}")
        return mismatches


def _normalize(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    return value


# Fixture registry: maps fixture names to definitions
FIXTURES: dict[str, Fixture] = {}


def register_fixture(fixture: Fixture) -> None:
    """Register a fixture.

    Args:
        fixture: Fixture to add under its own name

    Raises:
        ValueError: If a fixture with this name is already registered
    """
    if fixture.name in FIXTURES:
        raise ValueError(f"Fixture '{fixture.name}' is already registered")
    FIXTURES[fixture.name] = fixture


def get_fixture(name: str) -> Fixture:
    """Get a fixture by name.

    Raises:
        KeyError: If the fixture is not registered
    """
    return FIXTURES[name]


def is_fixture(name: str) -> bool:
    return name in FIXTURES


def list_fixtures() -> list[str]:
    """Sorted names of all registered fixtures."""
    return sorted(FIXTURES)
