class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure ran out of refinement steps."""
