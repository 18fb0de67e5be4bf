"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class GsrghwError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(GsrghwError, ValueError):
    """A precondition on the inputs is violated (CLI exit code 2)."""


class ParameterTooLarge(InvalidParameter):
    """Parameters exceed the exact-integer or table-size guard."""


class UndefinedConstruction(InvalidParameter):
    """The requested construction is not defined for these parameters."""


class DomainError(InvalidParameter):
    """A real-valued rate lies outside the domain of an asymptotic formula."""


class WorkloadExceeded(GsrghwError):
    """The estimated number of elementary steps exceeds the budget (exit code 3)."""

    def __init__(self, estimate: int, budget: int, what: str = "computation"):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"{what} needs an estimated {estimate} elementary steps, "
            f"over the budget of {budget}; raise the budget or force the run"
        )


class InvariantViolation(GsrghwError):
    """A derived report breaks one of its invariants."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)
