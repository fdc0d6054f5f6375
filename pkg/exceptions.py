"""Exception types raised by the cutoffqed modules."""

from typing import Any, Dict, List, Optional


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(RuntimeError):
    """Quadrature failed to reach its tolerance within the evaluation budget.

    Attributes:
        best_estimate: Best value obtained before giving up
        error_estimate: Error estimate attached to best_estimate
        evaluations: Number of integrand evaluations spent
    """

    def __init__(
        self,
        message: str,
        best_estimate: float,
        error_estimate: float,
        evaluations: int
    ):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.evaluations = evaluations


class IntegrationFailure(RuntimeError):
    """The mode integrator produced a non-finite state.

    Attributes:
        step: Index of the step at which the state became non-finite
    """

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class ConfigError(ValueError):
    """A run configuration failed validation.

    Attributes:
        errors: Every problem found, in document order
    """

    def __init__(self, errors: List[str], message: Optional[str] = None):
        super().__init__(message or "; ".join(errors))
        self.errors = list(errors)


class SweepRowError(RuntimeError):
    """A numeric failure while computing one row of a sweep table.

    Attributes:
        row: Zero-based index of the failing row in sweep order
        inputs: Input parameters of that row
    """

    def __init__(self, row: int, inputs: Dict[str, Any], cause: Exception):
        super().__init__(f"row {row} {inputs}: {cause}")
        self.row = row
        self.inputs = inputs
