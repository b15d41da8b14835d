"""Shared exception types."""


class TierExceededError(ValueError):
    """Input is larger than the guaranteed-exact tier of an operation."""


class ResourceBudgetError(RuntimeError):
    """A symbolic computation hit its pair-queue / degree / size budget."""


class RouteDisagreementError(AssertionError):
    """Two independently computed classification routes disagree.

    This never happens if the implemented theorems are true; it is raised
    (rather than silently preferring one route) because the agreement is
    the property under test.
    """
