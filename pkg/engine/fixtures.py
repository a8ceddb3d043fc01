"""The three worked examples shipped as built-in fixtures."""

from engine.case import CaseFile, CaseOptions
from engine.registry import FIXTURES, Fixture, register_fixture


def create_example1_fixture() -> Fixture:
    """S = <6,11,15,31>, I = (t^6, t^11, t^31): Buchsbaum, not Cohen-Macaulay, r = 2.

    Example:
        >>> create_example1_fixture().expected["mu"]
        [1, 3, 3]
    """
    return Fixture(
        name="example1",
        description="Buchsbaum but not Cohen-Macaulay with r = 2",
        case=CaseFile(
            name="example1",
            semigroup=[6, 11, 15, 31],
            char=32003,
            ideal=["t^6", "t^11", "t^31"],
            reductions=["t^6"],
        ),
        expected={
            "r": 2,
            "mu": [1, 3, 3],
            "f": [(1, 1, 1)],
            "alpha_free": [1, 1, 1],
            "alpha_torsion": [(1, 1, 1)],
            "decomposition": "F(J) ⊕ F(J)(-1) ⊕ F(J)(-2) ⊕ (F(J)/aF(J))(-1)",
            "hilbert_numerator": [1, 2, 0],
            "e": 3,
            "reg": 2,
            "fp": 0,
            "torsion_length": 1,
            "buchsbaum_constant": 1,
            "cohen_macaulay": False,
            "buchsbaum": True,
            "gorenstein": False,
            "comparison_verdict": "reduction-invariant on sampled reductions; Buchsbaum",
        },
    )


def create_example2_fixture() -> Fixture:
    """S = <8,15,28,50,57>, I = (t^8, t^15, t^50, t^57) under t^8 and t^8 + t^57: not Buchsbaum."""
    return Fixture(
        name="example2",
        description="not Buchsbaum with r = 3, compared under two supplied reductions",
        case=CaseFile(
            name="example2",
            semigroup=[8, 15, 28, 50, 57],
            char=32003,
            ideal=["t^8", "t^15", "t^50", "t^57"],
            reductions=["t^8", "t^8 + t^57"],
        ),
        expected={
            "r": 3,
            "mu": [1, 4, 4, 4],
            "f": [(1, 1, 1), (1, 2, 2), (2, 1, 1)],
            "alpha_free": [1, 1, 1, 1],
            "alpha_torsion": [(1, 1, 1), (1, 2, 1), (2, 1, 0)],
            "decomposition": (
                "F(J) ⊕ F(J)(-1) ⊕ F(J)(-2) ⊕ F(J)(-3) ⊕ (F(J)/aF(J))(-1) ⊕ (F(J)/a^2F(J))(-1)"
            ),
            "hilbert_numerator": [1, 3, 0, 0],
            "e": 4,
            "reg": 3,
            "fp": 0,
            "torsion_length": 3,
            "buchsbaum_constant": 2,
            "cohen_macaulay": False,
            "buchsbaum": False,
            "gorenstein": False,
            "comparison_verdict": "reduction-invariant on sampled reductions; not Buchsbaum",
        },
    )


def create_closing_fixture() -> Fixture:
    """S = <4,5,11>, I = m, a = t^4: Buchsbaum with r = 3 and a Sally-type maximal ideal."""
    return Fixture(
        name="closing",
        description="maximal ideal of <4,5,11>: Buchsbaum, not Cohen-Macaulay, r = 3",
        case=CaseFile(
            name="closing",
            semigroup=[4, 5, 11],
            char=32003,
            ideal=["t^4", "t^5", "t^11"],
            reductions=["t^4"],
            options=CaseOptions(comparisons=3),
        ),
        expected={
            "r": 3,
            "mu": [1, 3, 3, 4],
            "f": [(1, 1, 1), (1, 2, 1), (2, 1, 0)],
            "alpha_free": [1, 1, 1, 1],
            "alpha_torsion": [(1, 1, 1), (1, 2, 0), (2, 1, 0)],
            "decomposition": "F(J) ⊕ F(J)(-1) ⊕ F(J)(-2) ⊕ F(J)(-3) ⊕ (F(J)/aF(J))(-1)",
            "hilbert_numerator": [1, 2, 0, 1],
            "e": 4,
            "reg": 3,
            "fp": 2,
            "torsion_length": 1,
            "buchsbaum_constant": 1,
            "cohen_macaulay": False,
            "buchsbaum": True,
            "gorenstein": False,
            "sally": True,
        },
    )


def register_builtin_fixtures() -> None:
    """Register the built-in fixtures; already registered names are left alone."""
    for factory in (create_example1_fixture, create_example2_fixture, create_closing_fixture):
        fixture = factory()
        if fixture.name not in FIXTURES:
            register_fixture(fixture)
