class InfeasibleError(ValueError):
    """The requested family has no members."""


class BudgetExceeded(RuntimeError):
    """A brute-force enumeration would exceed its configured caps."""
