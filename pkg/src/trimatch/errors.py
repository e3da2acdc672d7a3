"""Exception types shared across the package."""


class TrimatchError(Exception):
    """Base class for package-specific errors."""


class BudgetExceededError(TrimatchError):
    """A search-node or memo-table cap was hit before an exact answer.

    Raised instead of returning a possibly wrong answer; callers must treat
    this as a third outcome, distinct from feasible/infeasible.
    """

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class ConstructionError(TrimatchError):
    """A generator could not realize the requested construction."""


class InfeasibleScopeError(TrimatchError):
    """A verification scope exceeds the shipped feasibility caps."""
