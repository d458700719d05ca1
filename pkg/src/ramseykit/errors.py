"""Exception types shared across the toolkit."""

from __future__ import annotations


class RamseyKitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(RamseyKitError, ValueError):
    """An argument is outside the operation's domain (bad vertex, size, range)."""


class ParseError(RamseyKitError, ValueError):
    """Malformed textual input. Carries the offending 1-based line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IncompleteColoringError(RamseyKitError, ValueError):
    """An operation requiring a total coloring was given undecided edges."""


class PreconditionError(RamseyKitError, ValueError):
    """A documented precondition does not hold (e.g. invalid extension base)."""


class BudgetExceeded(RamseyKitError, RuntimeError):
    """A configured search budget ran out before the result was complete."""
