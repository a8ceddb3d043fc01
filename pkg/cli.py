#!/usr/bin/env python3
"""Command-line interface for the fiber cone analysis engine.

Example usage:
    python cli.py analyze cases/example1.yaml
    python cli.py analyze cases/example2.yaml --json --seed 7
    python cli.py sweep cases/
    python cli.py sweep --random count=100,two_generated=true --properties --jobs 4
    python cli.py selftest
"""

import argparse
import logging
import sys
from typing import Optional

from engine.analysis import analyze
from engine.case import CaseFile
from engine.errors import CaseError, FiberConeError
from engine.fixtures import register_builtin_fixtures
from engine.registry import get_fixture, list_fixtures
from engine.report import AnalysisReport
from engine.sweep import RandomCaseSpec, generate_cases, load_corpus, sweep


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Arguments without the program name; None reads sys.argv

    Returns:
        Parsed argument namespace
    """
    parser = argparse.ArgumentParser(
        description="Exact structure of fiber cones of ideals in numerical semigroup rings.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py analyze cases/example1.yaml
  python cli.py analyze cases/example2.yaml --json
  python cli.py sweep --random count=100,two_generated=true --properties
  python cli.py selftest

Exit codes: 0 success, 2 input error, 3 no reduction, 4 truncation, 5 inconsistency.
The default field characteristic 32003 can be overridden with FIBERCONE_CHAR.
        """,
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="count",
        default=0,
        help="Log progress to stderr (-v: milestones, -vv: details)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_parser = commands.add_parser("analyze", help="Analyze one case file")
    analyze_parser.add_argument("case_file", type=str, help="Path to a .yaml or line-grammar case file")
    analyze_parser.add_argument("--json", action="store_true", help="Emit the machine-readable report")
    analyze_parser.add_argument("--seed", type=int, metavar="N", help="Override the case seed")
    analyze_parser.add_argument(
        "--comparisons", type=int, metavar="K", help="Random reductions added to the comparison"
    )
    analyze_parser.add_argument(
        "--truncation", type=int, metavar="N", help="Fixed reporting degree (no doubling)"
    )

    sweep_parser = commands.add_parser("sweep", help="Analyze a corpus of cases")
    sweep_parser.add_argument("corpus", nargs="?", type=str, help="Directory of case files")
    sweep_parser.add_argument(
        "--random", type=str, metavar="SPEC", help="Generate cases, e.g. count=100,seed=1"
    )
    sweep_parser.add_argument("--json", action="store_true", help="Emit the machine-readable summary")
    sweep_parser.add_argument(
        "--properties", action="store_true", help="Also run the identity suite on every case"
    )
    sweep_parser.add_argument("--jobs", type=int, default=1, metavar="J", help="Worker processes (default: 1)")

    selftest_parser = commands.add_parser("selftest", help="Run the built-in fixtures")
    selftest_parser.add_argument("--json", action="store_true", help="Emit every fixture report")

    return parser.parse_args(argv)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def run_analyze(
    case_file: str,
    as_json: bool,
    seed: Optional[int],
    comparisons: Optional[int],
    truncation: Optional[int],
) -> int:
    """Analyze one case file and print the report.

    Args:
        case_file: Path to the case file
        as_json: Print JSON instead of the text summary
        seed: Seed override
        comparisons: Comparison count override
        truncation: Reporting degree override

    Returns:
        Process exit code

    Raises:
        FiberConeError: Any categorized failure
    """
    case = CaseFile.load(case_file)
    report = analyze(case, seed=seed, comparisons=comparisons, truncation=truncation)
    print(report.to_json() if as_json else report.render_text())
    return 0


def run_sweep(
    corpus: Optional[str],
    random_spec: Optional[str],
    as_json: bool,
    properties: bool,
    jobs: int,
) -> int:
    """Run a sweep over a directory or generated cases.

    Returns:
        0, or 5 when the identity suite found violations

    Raises:
        CaseError: If neither or both of corpus and random_spec are given
    """
    if (corpus is None) == (random_spec is None):
        raise CaseError("sweep needs exactly one of a corpus directory or --random SPEC")
    if random_spec is not None:
        items = generate_cases(RandomCaseSpec.parse(random_spec))
    else:
        items = load_corpus(corpus)
    summary = sweep(items, properties=properties, jobs=jobs)
    print(summary.to_json() if as_json else summary.render_text())
    return 5 if summary.counts["violations"] else 0


def run_selftest(as_json: bool) -> int:
    """Run every built-in fixture against its expected values.

    Returns:
        0 if every fixture passes, else the exit code of the first failure
    """
    register_builtin_fixtures()
    status = 0
    reports: list[AnalysisReport] = []
    for name in list_fixtures():
        fixture = get_fixture(name)
        try:
            report = analyze(fixture.case)
        except FiberConeError as exc:
            print(f"FAIL {name}: Error ({exc.category}): {exc}")
            status = status or exc.exit_code
            continue
        reports.append(report)
        mismatches = fixture.check(report)
        if mismatches:
            print(f"FAIL {name}")
            for line in mismatches:
                print(f"  {line}")
            status = status or 5
        else:
            print(f"PASS {name}: {report.decomposition}")
    if as_json:
        print("[" + ",\n".join(r.to_json() for r in reports) + "]")
    return status


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the CLI.

    Returns:
        Process exit code
    """
    args = parse_args(argv)
    configure_logging(args.verbose)
    try:
        if args.command == "analyze":
            return run_analyze(args.case_file, args.json, args.seed, args.comparisons, args.truncation)
        if args.command == "sweep":
            return run_sweep(args.corpus, args.random, args.json, args.properties, args.jobs)
        return run_selftest(args.json)
    except FiberConeError as exc:
        print(f"Error ({exc.category}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
