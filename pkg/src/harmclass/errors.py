"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class DivergenceError(ArithmeticError):
    """A series was asked for a value where it does not converge."""
