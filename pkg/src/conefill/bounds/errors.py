"""Exception types raised by the numerical bound layers."""


class BoundsError(Exception):
    """Base exception for bound computations."""

    pass


class DomainError(BoundsError, ValueError):
    """Argument lies outside the domain on which a bound is valid."""

    pass


class HumpExceededError(DomainError):
    """A bound would cross the maximum of the packing function.

    Below the hump the differential inequalities stop holding, so callers
    get the validity limit instead of an extrapolated value.
    """

    def __init__(self, message: str, *, t_max: float | None = None) -> None:
        """Initialize the error.

        Args:
            message: Human readable description
            t_max: First time at which the lower z-envelope reaches z1, if known
        """
        super().__init__(message)
        self.t_max = t_max
