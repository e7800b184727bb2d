"""Exception types shared across the package."""


class HerglotzError(Exception):
    """Base class for library errors."""


class DomainError(HerglotzError, ValueError):
    """Evaluation requested outside the domain of definition (branch cut, boundary set, 0, infinity)."""


class NonSimpleBehaviorError(HerglotzError, ArithmeticError):
    """A boundary limit diverged: the function does not behave simply where the operation requires it."""


class NonConvergentLimitError(HerglotzError, ArithmeticError):
    """An extrapolated limit failed its convergence check in a context where convergence is mandatory."""


class SpecError(HerglotzError, ValueError):
    """Invalid construction recipe, job configuration, or file content."""
