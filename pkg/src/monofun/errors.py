"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its budget without converging."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible."""
