"""Tube packing geometry in the cylindrical coordinates around the singular axis.

The metric is dr^2 + sinh^2 r d theta^2 + cosh^2 r d zeta^2. theta lives on
the universal cover (unbounded); wrap_angle maps differences back to the
quotient by a cone angle.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from conefill.bounds.errors import DomainError
from conefill.bounds.scalar import get_constants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CylPoint:
    """Point (r, theta, zeta) in cylindrical coordinates."""

    r: float
    theta: float
    zeta: float

    def __post_init__(self) -> None:
        """Validate the radial coordinate."""
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise DomainError(f"Radial coordinate must be >= 0, got {self.r!r}")


def wrap_angle(delta: float, period: float = 2.0 * math.pi) -> float:
    """Representative of delta modulo period in (-period/2, period/2]."""
    if not (math.isfinite(period) and period > 0.0):
        raise DomainError(f"Period must be positive, got {period!r}")
    half = period / 2.0
    wrapped = math.fmod(delta + half, period)
    if wrapped <= 0.0:
        wrapped += period
    return wrapped - half


def cyl_distance(p1: CylPoint, p2: CylPoint) -> float:
    """Hyperbolic distance between two points in cylindrical coordinates.

    Uses the half-angle form of
    cosh d = cosh(dzeta) cosh r1 cosh r2 - cos(dtheta) sinh r1 sinh r2,
    which keeps full precision for nearby points.

    Raises:
        DomainError: If |theta1 - theta2| > pi
    """
    d_theta = p1.theta - p2.theta
    if abs(d_theta) > math.pi:
        raise DomainError(f"Angular separation {d_theta!r} exceeds pi")
    half_sq = (
        math.sinh((p1.zeta - p2.zeta) / 2.0) ** 2 * math.cosh(p1.r) * math.cosh(p2.r)
        + math.sinh((p1.r - p2.r) / 2.0) ** 2
        + math.sin(d_theta / 2.0) ** 2 * math.sinh(p1.r) * math.sinh(p2.r)
    )
    return 2.0 * math.asinh(math.sqrt(half_sq))


def ball_projection_contains(r0: float, d: float, theta: float, zeta: float) -> bool:
    """Check whether (theta, zeta) lies in the projection of a d-ball.

    The ball is centred at (r0, 0, 0). Only the half-space |theta| < pi/2
    facing the centre can be reached when d < r0.

    Args:
        r0: Distance of the ball centre from the axis
        d: Ball radius, 0 < d < r0
        theta: Angular coordinate
        zeta: Axial coordinate

    Returns:
        True if sinh^2 zeta cosh^2 r0 + sin^2 theta sinh^2 r0 <= sinh^2 d

    Raises:
        DomainError: If d is not in (0, r0)
    """
    if not (math.isfinite(r0) and 0.0 < d < r0):
        raise DomainError(
            f"Ball radius must satisfy 0 < d < r0, got d={d!r}, r0={r0!r}"
        )
    if abs(theta) >= math.pi / 2.0:
        return False
    lhs = (math.sinh(zeta) * math.cosh(r0)) ** 2 + (
        math.sin(theta) * math.sinh(r0)
    ) ** 2
    return lhs <= math.sinh(d) ** 2


class EllipseAxes(NamedTuple):
    """Semi-axes of the inscribed ellipse in flat torus coordinates."""

    a_axis: float  # along zeta cosh R
    b_axis: float  # along theta sinh R


def _require_radius(R: float) -> None:  # noqa: N803
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"Tube radius must be positive and finite, got {R!r}")


def inscribed_ellipse_axes(R: float) -> EllipseAxes:  # noqa: N803
    """Ellipse inscribed in the projection of a tangent ball of radius R.

    Returns:
        a = cosh R sinh R / (S cosh 2R), b = tanh(R)/2
    """
    _require_radius(R)
    s_ratio = get_constants().s_ratio
    a_axis = math.cosh(R) * math.sinh(R) / (s_ratio * math.cosh(2.0 * R))
    return EllipseAxes(a_axis=a_axis, b_axis=math.tanh(R) / 2.0)


def ellipse_boundary(
    R: float,  # noqa: N803
    n: int = 64,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Sample the inscribed ellipse boundary in (theta, zeta) coordinates.

    Args:
        R: Tube radius
        n: Number of equally spaced parameter values

    Returns:
        Arrays (theta, zeta) of length n
    """
    a_axis, b_axis = inscribed_ellipse_axes(R)
    phi = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    theta = b_axis * np.sin(phi) / math.sinh(R)
    zeta = a_axis * np.cos(phi) / math.cosh(R)
    return theta, zeta


def torus_area_lower_bound(R: float, multi_cusp: bool = False) -> float:  # noqa: N803
    """Lower bound on the area of the tube boundary torus.

    Two disjoint ellipses (one for multiple components) at circle packing
    density pi/(2 sqrt 3) give C sinh^2 R / cosh 2R.

    Args:
        R: Tube radius
        multi_cusp: Singular locus has several components

    Returns:
        Area lower bound
    """
    _require_radius(R)
    c = get_constants().cusp_constant(multi_cusp)
    return c * math.sinh(R) ** 2 / math.cosh(2.0 * R)


def max_projected_sinh_zeta(R: float) -> float:  # noqa: N803
    """Largest |sinh zeta| on the projected tangent ball: sinh R / cosh 2R.

    Bounded by 1/(2 sqrt 2), attained at sinh R = 1/sqrt 2.
    """
    _require_radius(R)
    return math.sinh(R) / math.cosh(2.0 * R)
