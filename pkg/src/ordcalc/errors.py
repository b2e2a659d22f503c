"""Exception types shared across the package.

Exit-code mapping used by the CLI: parse errors exit 2, budget errors
exit 3, precondition violations exit 4.
"""


class OrdcalcError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OrdcalcError):
    """Malformed input text; carries a position when available."""

    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class BudgetExceeded(OrdcalcError):
    """An enumeration or value size went past the configured work budget."""


class PreconditionError(OrdcalcError):
    """An operation was called outside its stated domain."""
