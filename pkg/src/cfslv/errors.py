"""Exception types shared across the toolkit."""


class ResourceBudgetError(RuntimeError):
    """An enumeration would exceed its configured work budget.

    Raised before any large allocation happens, so callers can retry
    with a bigger budget or a smaller instance.
    """


class ConvergenceError(RuntimeError):
    """The iterative eigensolver failed to reach its tolerance."""
