"""Exception types shared across the package."""


class BoxWreathError(Exception):
    """Base class for all library errors."""


class CapExceeded(BoxWreathError):
    """A configured size cap (degree, order, vertex count, search budget) was hit."""


class HypothesisViolation(BoxWreathError, ValueError):
    """An input fails a mathematical precondition (not transitive, not a subgroup, ...)."""


class SdUndefined(HypothesisViolation):
    """The minimal nontrivial subdegree was requested for a regular group."""


class ParseError(BoxWreathError, ValueError):
    """Syntax error in a group expression; ``position`` is a 0-based column."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)
