"""Exception hierarchy shared by the library and the CLI."""


class DeBruijnError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DomainError(DeBruijnError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class DataError(DeBruijnError, ValueError):
    """Input data could not be parsed or is unusable."""

    exit_code = 3


class ModelError(DeBruijnError, ValueError):
    """The transition spec does not define a usable (ergodic) process."""

    exit_code = 4


class VerificationError(DeBruijnError):
    """An oracle cross-check failed."""

    exit_code = 5


class BudgetError(DomainError):
    """An exhaustive enumeration would exceed its budget."""
