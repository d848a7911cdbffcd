"""Exception types raised by the library."""


class DomainError(ValueError):
    """An angle or point lies outside the domain of a map."""


class NonFiniteIntegrandError(FloatingPointError):
    """The user integrand returned inf or nan at some point of the real line."""

    def __init__(self, x):
        self.x = x
        super().__init__(f"integrand is not finite at x = {x!r}")


class NumericalConsistencyError(ArithmeticError):
    """A computed quantity violates an internal consistency check."""
