"""Adaptive quadrature and bracketed root finding with explicit tolerances.

Thin wrappers over scipy so every caller states its tolerance and gets a
DomainError instead of a silent NaN when the integrator or solver gives up.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from scipy import integrate, optimize

from conefill.bounds.errors import DomainError

logger = logging.getLogger(__name__)

# QUADPACK subdivision limit
QUAD_LIMIT = 200

# Relative quadrature tolerance; the absolute one comes from Tolerances
QUAD_RTOL = 1e-12

# brentq requires rtol >= 4 * machine epsilon
ROOT_RTOL = 1e-15

ROOT_MAXITER = 300


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances threaded through every bound computation."""

    quad_abs: float = 1e-10
    root: float = 1e-12

    def __post_init__(self) -> None:
        """Reject non-positive tolerances."""
        if not (self.quad_abs > 0 and self.root > 0):
            raise ValueError(
                f"Tolerances must be positive, got quad_abs={self.quad_abs}, "
                f"root={self.root}"
            )


DEFAULT_TOLERANCES = Tolerances()


def integrate_interval(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Integrate func over [lo, hi] with adaptive Gauss-Kronrod refinement.

    Args:
        func: Integrand, smooth on the open interval
        lo: Lower limit
        hi: Upper limit
        tol: Tolerances (quad_abs is the absolute error target)

    Returns:
        Integral value (0.0 for an empty interval)

    Raises:
        DomainError: If the integral is not finite
    """
    if lo == hi:
        return 0.0
    value, error = integrate.quad(
        func, lo, hi, epsabs=tol.quad_abs, epsrel=QUAD_RTOL, limit=QUAD_LIMIT
    )
    if not math.isfinite(value):
        raise DomainError(f"Integral over [{lo}, {hi}] is not finite")
    if error > max(tol.quad_abs, QUAD_RTOL * abs(value)):
        logger.warning(
            "Quadrature over [%.17g, %.17g] reports error %.3g above target %.3g",
            lo,
            hi,
            error,
            tol.quad_abs,
        )
    return float(value)


def find_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Find the root of a function that changes sign on [lo, hi].

    Args:
        func: Continuous function with func(lo) and func(hi) of opposite sign
        lo: Left end of the bracket
        hi: Right end of the bracket
        tol: Tolerances (root is the absolute tolerance in the argument)

    Returns:
        Root location

    Raises:
        DomainError: If the bracket does not contain a sign change
    """
    f_lo = func(lo)
    if f_lo == 0.0:
        return lo
    f_hi = func(hi)
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise DomainError(
            f"No sign change on [{lo}, {hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        )
    root = optimize.brentq(
        func, lo, hi, xtol=tol.root, rtol=ROOT_RTOL, maxiter=ROOT_MAXITER
    )
    logger.debug("Root %.17g bracketed in [%.17g, %.17g]", root, lo, hi)
    return float(root)
