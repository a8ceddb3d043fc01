"""Exception hierarchy for the fiber cone engine.

Every failure carries a category and the process exit code the CLI maps it to.
"""


class FiberConeError(Exception):
    """Base class for all engine failures."""

    category: str = "internal-inconsistency"
    exit_code: int = 5


class CaseError(FiberConeError, ValueError):
    """Malformed case file, element text, option or zero ideal."""

    category = "parse"
    exit_code = 2


class SeriesParseError(CaseError):
    """Element grammar violation at a known character position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class SemigroupError(FiberConeError, ValueError):
    """Invalid semigroup generators or membership query."""

    category = "semigroup"
    exit_code = 2


class NoReductionError(FiberConeError):
    """No principal reduction verified within the reduction-number bound."""

    category = "no-reduction"
    exit_code = 3


class TruncationError(FiberConeError):
    """A computation needed degrees above the reporting degree, or did not certify."""

    category = "truncation"
    exit_code = 4


class InconsistencyError(FiberConeError):
    """A theorem-level assertion or an internal contract failed."""

    category = "internal-inconsistency"
    exit_code = 5
