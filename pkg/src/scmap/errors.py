"""Exception types shared across the package."""


class SCError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SCError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class SingularPointError(DomainError):
    """Evaluation requested exactly at a singular point (a prevertex or
    branch point)."""


class DivergenceError(DomainError):
    """A series or integral diverges for the requested parameters."""


class ArgumentError(SCError, ValueError):
    """Structurally invalid argument (bad index, malformed config, ...)."""


class ConvergenceError(SCError, RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance within
    its subdivision budget.  Carries the partial result when available."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
