"""
Exception types raised by PCW Analyzer.
"""

from typing import Any, Optional


class PcwAnalyzerError(Exception):
    """Base class for every error raised by this package."""
    pass


class MatrixFormatError(PcwAnalyzerError):
    """Custom exception for malformed dense or alist matrix files."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatchError(PcwAnalyzerError, ValueError):
    """Custom exception for vectors or matrices of incompatible sizes."""
    pass


class InvalidParameterError(PcwAnalyzerError, ValueError):
    """Custom exception for out-of-range numeric parameters."""
    pass


class GuardExceededError(PcwAnalyzerError):
    """Raised when an enumeration would exceed one of the configured guards."""

    def __init__(self, guard: str, limit: int, actual: int) -> None:
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(f"{guard} exceeded: {actual} > {limit}")


class SearchBudgetExceededError(GuardExceededError):
    """
    Raised when a search examines more states than its budget allows.

    ``partial`` holds whatever the search had produced before it stopped,
    or None when nothing meaningful can be reported.
    """

    def __init__(
        self, guard: str, limit: int, actual: int, partial: Any = None
    ) -> None:
        super().__init__(guard, limit, actual)
        self.partial = partial


class ReferenceInvalidError(PcwAnalyzerError):
    """Custom exception for a cycle-free reference that is not one."""
    pass


class OutOfHypothesisError(PcwAnalyzerError):
    """The code has no cycle-free representation, so no verdict applies."""
    pass


class NotApplicableError(PcwAnalyzerError):
    """A witness was requested for a matrix that reduces to a forest."""
    pass


class WitnessExhaustedError(PcwAnalyzerError):
    """No witness candidate verified; the construction failed on this input."""
    pass


class VerificationError(PcwAnalyzerError):
    """A verdict failed its own re-check; the result must not be reported."""
    pass
