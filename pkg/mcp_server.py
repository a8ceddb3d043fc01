"""MCP server for the fiber cone analysis engine.

Provides tools for:
- Listing and running the built-in fixtures
- Analyzing an ideal of a numerical semigroup ring
- Querying semigroup data (conductor, gaps, members)
"""

from typing import Optional

from mcp.server.fastmcp import FastMCP

from engine.analysis import analyze
from engine.case import CaseFile
from engine.errors import FiberConeError
from engine.fixtures import register_builtin_fixtures
from engine.registry import get_fixture, is_fixture, list_fixtures
from engine.semigroup import NumericalSemigroup

# Initialize MCP server
mcp = FastMCP("FiberCone")

# Register fixtures at module load
register_builtin_fixtures()


def _error(exc: FiberConeError) -> dict:
    return {"status": "error", "category": exc.category, "message": str(exc)}


@mcp.tool()
def fibercone_list_fixtures() -> dict:
    """List the built-in fixture cases.

    Returns:
        dict: 'fixtures' with name and description of each fixture
    """
    names = list_fixtures()
    return {
        "status": "success",
        "fixtures": [{"name": n, "description": get_fixture(n).description} for n in names],
        "count": len(names),
    }


@mcp.tool()
def fibercone_run_fixture(name: str) -> dict:
    """Analyze a built-in fixture and compare it with its expected values.

    Args:
        name: Fixture name as listed by fibercone_list_fixtures

    Returns:
        dict: The report, and 'passed' with any 'mismatches'
    """
    if not is_fixture(name):
        return {
            "status": "error",
            "category": "parse",
            "message": f"Unknown fixture '{name}'. Available: {', '.join(list_fixtures())}",
        }
    fixture = get_fixture(name)
    try:
        report = analyze(fixture.case)
    except FiberConeError as exc:
        return _error(exc)
    mismatches = fixture.check(report)
    return {
        "status": "success",
        "passed": not mismatches,
        "mismatches": mismatches,
        "report": report.model_dump(mode="json"),
    }


@mcp.tool()
def fibercone_analyze(
    semigroup: list[int],
    ideal: list[str],
    reductions: Optional[list[str]] = None,
    char: Optional[int] = None,
    seed: int = 0,
    comparisons: int = 3,
) -> dict:
    """Analyze the fiber cone of an ideal of k[[t^S]].

    Args:
        semigroup: Generators of the numerical semigroup S
        ideal: Generator expressions such as "t^6" or "t^8 + 3*t^57"
        reductions: Optional principal reduction expressions to verify and compare
        char: Field characteristic (default: FIBERCONE_CHAR or 32003)
        seed: Seed of the random reduction search
        comparisons: Random reductions added to the comparison

    Returns:
        dict: 'report' with every invariant, plus a 'summary' text
    """
    data: dict = {
        "name": "mcp",
        "semigroup": semigroup,
        "ideal": ideal,
        "reductions": reductions or [],
        "options": {"seed": seed, "comparisons": comparisons},
    }
    if char is not None:
        data["char"] = char
    try:
        report = analyze(CaseFile.from_dict(data))
    except FiberConeError as exc:
        return _error(exc)
    return {
        "status": "success",
        "report": report.model_dump(mode="json"),
        "summary": report.render_text(),
    }


@mcp.tool()
def fibercone_semigroup_info(generators: list[int], up_to: int = 30) -> dict:
    """Describe a numerical semigroup.

    Args:
        generators: Generators of S
        up_to: Members of S up to this degree are listed

    Returns:
        dict: minimal generators, multiplicity, conductor, gaps and members
    """
    try:
        semigroup = NumericalSemigroup(generators)
    except FiberConeError as exc:
        return _error(exc)
    return {
        "status": "success",
        "semigroup": str(semigroup),
        "minimal_generators": list(semigroup.minimal_generators),
        "multiplicity": semigroup.multiplicity,
        "conductor": semigroup.conductor,
        "gaps": semigroup.gaps(),
        "members": semigroup.monomials_up_to(up_to),
    }


if __name__ == "__main__":
    mcp.run()
