"""Exceptions raised by noma-relay."""

from typing import Optional


class NomaError(Exception):
    """Base exception for noma-relay errors."""
    pass


class DomainError(NomaError, ValueError):
    """An argument lies outside the domain of the operation."""
    pass


class SpecialFunctionOverflow(NomaError, OverflowError):
    """An unscaled special-function value is not representable as a float."""
    pass


class IntegrandError(NomaError):
    """The integrand returned a non-finite value."""

    def __init__(self, abscissa: float, value: float):
        self.abscissa = abscissa
        self.value = value
        super().__init__(f"integrand is {value!r} at x = {abscissa!r}")


class QuadratureAccuracyError(NomaError):
    """Adaptive quadrature stopped before reaching the requested tolerance."""

    def __init__(self, estimate: float, error_bound: float, detail: Optional[str] = None):
        self.estimate = estimate
        self.error_bound = error_bound
        message = f"quadrature did not converge: estimate {estimate!r} +/- {error_bound!r}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class SeriesConvergenceError(NomaError):
    """A truncated series did not settle within its term budget."""

    def __init__(self, partial_sum: float, terms_used: int, detail: Optional[str] = None):
        self.partial_sum = partial_sum
        self.terms_used = terms_used
        message = f"series did not converge after {terms_used} terms (partial sum {partial_sum!r})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class FormulaInvariantError(NomaError):
    """A closed form produced a probability outside [0, 1] beyond round-off."""
    pass
