# app/utils/errors.py
# ---------------------------------------------------------------------
# Error hierarchy shared by services and the CLI.
# - Every error carries the exit code the CLI reports for it
# - Nothing here subclasses ValueError: pydantic validators let these
#   propagate as-is instead of wrapping them in a ValidationError
# ---------------------------------------------------------------------

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CLAIM_FAILURE = 3


class OrdinalError(Exception):
    """Base class for every error raised by the library."""

    exit_code = EXIT_INPUT


# --- Input errors (exit 2) -------------------------------------------

class NonFiniteValueError(OrdinalError):
    """A sample is NaN or infinite."""


class EmptyWindowError(OrdinalError):
    """A window (or window matrix) has zero columns."""


class SeriesTooShortError(OrdinalError):
    """The series cannot hold a single window of the requested embedding."""

    def __init__(self, length: int, m: int, tau: int):
        self.length = length
        self.m = m
        self.tau = tau
        needed = (m - 1) * tau + 1
        super().__init__(f"series of length {length} is too short for m={m}, tau={tau} (needs {needed})")


class EmptyInputError(OrdinalError):
    """Nothing to work on: empty file, empty pattern sequence."""


class InputUnreadableError(OrdinalError):
    """The input file is missing or cannot be decoded as UTF-8 text."""


class ParseError(OrdinalError):
    """A line of the input could not be read as a finite real number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NotInvertibleError(OrdinalError):
    """Inverse requested for a pattern that contains repeated indexes."""


class MixedPatternSpacesError(OrdinalError):
    """Patterns disagree on (m, kind, policy)."""


# --- Usage / parameter errors (exit 1) -------------------------------

class UsageError(OrdinalError):
    exit_code = EXIT_USAGE


class InvalidParameterError(OrdinalError):
    exit_code = EXIT_USAGE


class DimensionTooLargeError(OrdinalError):
    exit_code = EXIT_USAGE


class UniverseTooLargeError(OrdinalError):
    exit_code = EXIT_USAGE


class UnsupportedCombinationError(OrdinalError):
    """No pattern-level map exists for this (symmetry, kind) pair."""

    exit_code = EXIT_USAGE


class UnsupportedPatternSpaceError(OrdinalError):
    """A statistic was asked of a (kind, policy) space where it is unsound."""

    exit_code = EXIT_USAGE


class UnknownClaimError(OrdinalError):
    exit_code = EXIT_USAGE
