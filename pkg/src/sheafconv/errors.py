"""Exception hierarchy shared across the package.

The CLI maps these onto its exit codes: bad input data is an InputError
(exit 2), a well-formed negative verdict is signalled by NotInvertible
(exit 1), and InvariantViolation marks states the calculus promises are
impossible (exit 3).
"""


class SheafConvError(Exception):
    """Base class for all package errors."""


class InputError(SheafConvError):
    """Malformed or out-of-domain input (parse errors, bad JSON, floats)."""


class ParseError(InputError):
    """DSL syntax or arity error; carries a byte offset into the source."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at byte {position})")
        self.position = position


class NotInvertible(SheafConvError):
    """Raised when an inverse is requested for a non-invertible object."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class InvariantViolation(SheafConvError):
    """An internal self-check failed; indicates a bug, not bad input."""
