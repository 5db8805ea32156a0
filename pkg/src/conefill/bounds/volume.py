"""Volume change under cone deformation.

Schläfli gives dV/d alpha = -ell/2. Combined with the z-inequalities this
bounds the volume lost between the complete structure (z = 1) and a cone
structure with z = z_hat:

    int_{z_hat}^1 H'/(4H(H + G)) dz  <=  Delta V  <=  int_{z_hat}^1 H'/(4H(H - G~)) dz

Both integrands tend to C/4 at z = 1, which is why Delta V is close to
pi*ell/2 for short core geodesics.
"""

import logging
import math

from conefill.bounds.errors import DomainError, HumpExceededError
from conefill.bounds.numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    integrate_interval,
)
from conefill.bounds.scalar import (
    HUMP_EDGE_RTOL,
    G,
    Gtilde,
    H,
    dH_dz,
    get_constants,
    h_inverse,
)
from conefill.models import CUSPED_VOLUME_MIN, Bracket, VolumeChangeResult

logger = logging.getLogger(__name__)

# Within this distance of z = 1 the integrands are replaced by their limit C/4
BOUNDARY_LAYER = 1e-6

# Length bound for the shortest geodesic in the drilling corollary
SHORTEST_GEODESIC_LENGTH = 0.162


def _lower_integrand(z: float, multi_cusp: bool) -> float:
    if 1.0 - z < BOUNDARY_LAYER:
        return get_constants().cusp_constant(multi_cusp) / 4.0
    hz = H(z, multi_cusp)
    return dH_dz(z, multi_cusp) / (4.0 * hz * (hz + G(z, multi_cusp)))


def _upper_integrand(z: float, multi_cusp: bool) -> float:
    if 1.0 - z < BOUNDARY_LAYER:
        return get_constants().cusp_constant(multi_cusp) / 4.0
    hz = H(z, multi_cusp)
    return dH_dz(z, multi_cusp) / (4.0 * hz * (hz - Gtilde(z, multi_cusp)))


def volume_drop_integrals(
    z_hat: float,
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Bracket:
    """Integrate both volume-change integrands over [z_hat, 1].

    Args:
        z_hat: Lower integration limit, between the hump top and 1
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        Bracket of the lower and upper integrals

    Raises:
        DomainError: If z_hat lies below the top of the hump or above 1
    """
    z_top = get_constants().z_at_hmax
    if not (math.isfinite(z_hat) and z_top * (1.0 - HUMP_EDGE_RTOL) <= z_hat <= 1.0):
        raise DomainError(f"z_hat must lie in [{z_top}, 1], got {z_hat!r}")
    z_hat = max(z_hat, z_top)
    lo = integrate_interval(lambda z: _lower_integrand(z, multi_cusp), z_hat, 1.0, tol)
    hi = integrate_interval(lambda z: _upper_integrand(z, multi_cusp), z_hat, 1.0, tol)
    return Bracket(lo=lo, hi=max(lo, hi))


def delta_v_bounds(
    ell_hat: float,
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> VolumeChangeResult:
    """Bound the volume lost by filling, given the core length after filling.

    Args:
        ell_hat: Core length at cone angle 2*pi, 0 <= ell_hat <= h_max/(2*pi)
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        VolumeChangeResult with z_hat, the Delta V bracket and pi*ell_hat/2

    Raises:
        DomainError: If ell_hat is negative
        HumpExceededError: If 2*pi*ell_hat is above the hump maximum
    """
    if not (math.isfinite(ell_hat) and ell_hat >= 0.0):
        raise DomainError(f"Core length must be non-negative, got {ell_hat!r}")
    nz = math.pi * ell_hat / 2.0
    if ell_hat == 0.0:
        return VolumeChangeResult(
            ell_hat=0.0, z_hat=1.0, delta_v=Bracket(0.0, 0.0), nz_asymptote=0.0
        )

    top = get_constants().hump_max(multi_cusp)
    a = 2.0 * math.pi * ell_hat
    if a > top * (1.0 + HUMP_EDGE_RTOL):
        raise HumpExceededError(
            f"Core length {ell_hat!r} exceeds h_max/(2*pi) = {top / (2 * math.pi)!r}"
        )
    rho_hat = h_inverse(min(a, top), multi_cusp, tol)
    # 1 - tanh(rho) without cancellation
    gap = 2.0 / (math.exp(2.0 * rho_hat) + 1.0)
    z_hat = 1.0 - gap
    delta_v = volume_drop_integrals(z_hat, multi_cusp, tol)
    logger.debug(
        "ell_hat=%.17g z_hat=%.17g delta_v=[%.17g, %.17g]",
        ell_hat,
        z_hat,
        delta_v.lo,
        delta_v.hi,
    )
    return VolumeChangeResult(
        ell_hat=ell_hat, z_hat=z_hat, delta_v=delta_v, nz_asymptote=nz
    )


def schlafli_easy_bound(delta_alpha: float, ell0: float) -> float:
    """Volume change bound |delta_alpha| * ell0 / 2.

    Valid while the tube radius stays above arcsinh(1/sqrt 2) and the cone
    angle decreases, so that the core length only shrinks.
    """
    if not (math.isfinite(ell0) and ell0 > 0.0):
        raise DomainError(f"Core length must be positive, got {ell0!r}")
    return abs(delta_alpha) * ell0 / 2.0


def dv_dalpha(ell: float) -> float:
    """Schläfli formula: dV/d alpha = -ell/2."""
    if not (math.isfinite(ell) and ell >= 0.0):
        raise DomainError(f"Core length must be non-negative, got {ell!r}")
    return -ell / 2.0


def min_volume_after_filling(
    cusped_volume_min: float = CUSPED_VOLUME_MIN,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Lower bound on the volume of a filled manifold.

    The largest admissible core length is h_max/(2*pi); subtract its
    Delta V upper bound from the smallest cusped volume.
    """
    ell_max = get_constants().h_max / (2.0 * math.pi)
    return cusped_volume_min - delta_v_bounds(ell_max, tol=tol).delta_v.hi


def min_volume_with_short_geodesic(
    cusped_volume_min: float = CUSPED_VOLUME_MIN,
    ell_max: float = SHORTEST_GEODESIC_LENGTH,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Volume lower bound for closed manifolds whose shortest geodesic is short.

    Drilling a shortest geodesic of length at most ell_max gives a cusped
    manifold, whose volume exceeds the closed one by at most Delta V.
    """
    return cusped_volume_min - delta_v_bounds(ell_max, tol=tol).delta_v.hi


def drilled_volume_bracket(
    volume_closed: float,
    ell: float,
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Bracket:
    """Volume range of the cusped manifold obtained by drilling a geodesic.

    Args:
        volume_closed: Volume of the closed (or cone) manifold
        ell: Length of the drilled geodesic, at most h_max/(2*pi)
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        Bracket [V + Delta V lo, V + Delta V hi]
    """
    if not (math.isfinite(volume_closed) and volume_closed > 0.0):
        raise DomainError(f"Volume must be positive, got {volume_closed!r}")
    delta_v = delta_v_bounds(ell, multi_cusp, tol).delta_v
    return Bracket(lo=volume_closed + delta_v.lo, hi=volume_closed + delta_v.hi)
