"""Work-budget accounting.

Every exponential primitive in the package (subset enumeration, big
powers) charges against a single step budget, configurable through the
ORDCALC_BUDGET environment variable.  Exceeding it raises BudgetExceeded
instead of silently approximating.
"""

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 1 << 24
DEFAULT_MAX_DEPTH = 8
DEFAULT_EXPONENT_CAP = 24

_override: int | None = None


def budget() -> int:
    """Current step budget (env ORDCALC_BUDGET, else 2^24)."""
    if _override is not None:
        return _override
    raw = os.environ.get("ORDCALC_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise BudgetExceeded(f"ORDCALC_BUDGET is not an integer: {raw!r}")
        if value <= 0:
            raise BudgetExceeded("ORDCALC_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def set_budget(value: int | None) -> None:
    """Process-wide override; None restores the environment default."""
    global _override
    _override = value


def max_depth() -> int:
    raw = os.environ.get("ORDCALC_MAX_DEPTH")
    return int(raw) if raw else DEFAULT_MAX_DEPTH


def check_steps(n: int, what: str = "enumeration") -> None:
    """Charge n elementary steps; raise if past the budget."""
    if n > budget():
        raise BudgetExceeded(f"{what} needs {n} steps, budget is {budget()}")


def check_enum_bits(nbits: int, what: str = "enumeration") -> None:
    """Charge 2^nbits steps without materialising the power."""
    if nbits > budget().bit_length() + 1 or (1 << nbits) > budget():
        raise BudgetExceeded(f"{what} needs 2^{nbits} steps, budget is {budget()}")
