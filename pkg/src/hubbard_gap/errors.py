"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """A numerical procedure failed to reach its accuracy target."""


class FitDegeneracyError(DomainError):
    """Extrapolation grid too short or too clustered to support the fit."""
