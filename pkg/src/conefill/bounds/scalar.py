"""Packing function h, its inverse, and the substituted functions H, G, G~, F.

The cusp constant C is computed from the packing argument (two inscribed
ellipses at hexagonal circle density), never taken from a rounded literal.
Every function is total on its stated domain and raises DomainError outside
it; nothing here returns NaN.

With z = tanh(rho) and alpha*ell = h(rho):

    H(z)  = (1 + z^2) / (C z (1 - z^2))        = 1 / h(rho)
    G(z)  = (1 + z^2) / (2C z^3)
    G~(z) = (1 + z^2)^2 / (2C z^3 (3 - z^2))
    F(z)  = -(1 + 4z + 6z^2 + z^4) / ((1 + z)(1 + z^2)^2)

and H'/(H + G) = F + 1/(1 - z) for either cusp constant.
"""

import logging
import math
from dataclasses import dataclass
from typing import NewType

from conefill.bounds.errors import DomainError, HumpExceededError
from conefill.bounds.numerics import DEFAULT_TOLERANCES, Tolerances, find_root

logger = logging.getLogger(__name__)

TubeRadius = NewType("TubeRadius", float)
ZCoord = NewType("ZCoord", float)

# Operative literals of the threshold arithmetic. tanh(RHO1) is about 6e-5
# below Z1; both are kept as given.
RHO1 = 0.531
Z1 = 0.4862

# Right end of the bracket used by h_inverse
H_INVERSE_R_MAX = 50.0

# Arguments this close above the hump maximum are treated as the maximum
HUMP_EDGE_RTOL = 1e-12

# H - G~ changes sign at z^2 = 3 - 2 sqrt 2
UPPER_KERNEL_Z_MIN = math.sqrt(2.0) - 1.0

KERNEL_BOUNDARY_LAYER = 1e-6
FTILDE_AT_ONE = 0.5


def _f(z: float) -> float:
    return z * (1.0 - z) * (1.0 + z) / (1.0 + z * z)


@dataclass(frozen=True)
class PackingConstants:
    """Constants of the tube packing argument."""

    s_ratio: float  # (1/(2*sqrt 2)) / arcsinh(1/(2*sqrt 2)), about 1/0.980258
    c_single: float
    c_multi: float
    h_max: float
    r_at_hmax: float
    z_at_hmax: float
    z1: float
    rho1: float

    @classmethod
    def compute(cls, c_scale: float = 1.0) -> "PackingConstants":
        """Compute the constants from first principles.

        Args:
            c_scale: Multiplier applied to the cusp constant (1.0 in production;
                other values exist to exercise failure paths)

        Returns:
            PackingConstants instance
        """
        corner = 1.0 / (2.0 * math.sqrt(2.0))
        s_ratio = corner / math.asinh(corner)
        c_single = c_scale * 2.0 * math.sqrt(3.0) / s_ratio
        z_at_hmax = math.sqrt(math.sqrt(5.0) - 2.0)
        return cls(
            s_ratio=s_ratio,
            c_single=c_single,
            c_multi=c_single / 2.0,
            h_max=c_single * _f(z_at_hmax),
            r_at_hmax=math.atanh(z_at_hmax),
            z_at_hmax=z_at_hmax,
            z1=Z1,
            rho1=RHO1,
        )

    def cusp_constant(self, multi_cusp: bool = False) -> float:
        """Return C for one cusp, or C/2 when other cusps share the packing."""
        return self.c_multi if multi_cusp else self.c_single

    def hump_max(self, multi_cusp: bool = False) -> float:
        """Maximum of h for the given cusp count."""
        return self.h_max / 2.0 if multi_cusp else self.h_max


CONSTANTS = PackingConstants.compute()


def get_constants() -> PackingConstants:
    """Return the process-wide packing constants."""
    return CONSTANTS


def _require_radius(r: float) -> None:
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"Tube radius must be positive and finite, got {r!r}")


def _require_z(z: float, *, closed: bool) -> None:
    upper_ok = z <= 1.0 if closed else z < 1.0
    if not (math.isfinite(z) and z > 0.0 and upper_ok):
        interval = "(0, 1]" if closed else "(0, 1)"
        raise DomainError(f"z must lie in {interval}, got {z!r}")


def _h(r: float, c: float) -> float:
    # 1/cosh(2r) written with exp(-2r) so large radii underflow instead of overflow
    e2 = math.exp(-2.0 * r)
    return c * math.tanh(r) * 2.0 * e2 / (1.0 + e2 * e2)


def _dh_dr(r: float, c: float) -> float:
    z = math.tanh(r)
    sech = 2.0 * math.exp(-r) / (1.0 + math.exp(-2.0 * r))
    return c * (1.0 - 4.0 * z**2 - z**4) / (1.0 + z**2) ** 2 * sech**2


def h(r: float, multi_cusp: bool = False) -> float:
    """Packing lower bound for alpha*ell at tube radius r.

    Args:
        r: Tube radius, positive and finite
        multi_cusp: Use the multi-cusp constant C/2

    Returns:
        C * tanh(r) / cosh(2r)

    Raises:
        DomainError: If r is not positive and finite
    """
    _require_radius(r)
    return _h(r, get_constants().cusp_constant(multi_cusp))


def f_of_z(z: float) -> float:
    """Shape of h in the z = tanh(r) coordinate: z(1 - z^2)/(1 + z^2)."""
    _require_z(z, closed=True)
    return _f(z)


def h_inverse(
    a: float, multi_cusp: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> TubeRadius:
    """Invert h on its decreasing branch.

    Args:
        a: Value of alpha*ell, 0 < a <= h_max
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        The unique r >= r_at_hmax with h(r) = a

    Raises:
        DomainError: If a is not positive
        HumpExceededError: If a is above the hump maximum
    """
    consts = get_constants()
    top = consts.hump_max(multi_cusp)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"h_inverse needs a positive argument, got {a!r}")
    if a > top * (1.0 + HUMP_EDGE_RTOL):
        raise HumpExceededError(f"Value {a!r} is above the hump maximum {top!r}")
    if a >= top:
        return TubeRadius(consts.r_at_hmax)

    c = consts.cusp_constant(multi_cusp)
    r_hi = max(H_INVERSE_R_MAX, 0.5 * math.log(4.0 * c / a) + 1.0)
    root = find_root(lambda r: _h(r, c) - a, consts.r_at_hmax, r_hi, tol)
    return TubeRadius(_newton_polish(root, a, c, consts.r_at_hmax, r_hi))


def _newton_polish(r: float, a: float, c: float, lo: float, hi: float) -> float:
    slope = _dh_dr(r, c)
    if slope == 0.0:
        return r
    candidate = r - (_h(r, c) - a) / slope
    if lo <= candidate <= hi and abs(_h(candidate, c) - a) < abs(_h(r, c) - a):
        return candidate
    return r


def H(z: float, multi_cusp: bool = False) -> float:  # noqa: N802
    """1/(alpha*ell) as a function of z; blows up like 1/(C(1 - z)) at z = 1."""
    _require_z(z, closed=False)
    c = get_constants().cusp_constant(multi_cusp)
    return (1.0 + z * z) / (c * z * (1.0 - z) * (1.0 + z))


def G(z: float, multi_cusp: bool = False) -> float:  # noqa: N802
    """Lower rate bound: du/dt >= -G(z)."""
    _require_z(z, closed=True)
    c = get_constants().cusp_constant(multi_cusp)
    return (1.0 + z * z) / (2.0 * c * z**3)


def Gtilde(z: float, multi_cusp: bool = False) -> float:  # noqa: N802
    """Upper rate bound: du/dt <= G~(z)."""
    _require_z(z, closed=True)
    c = get_constants().cusp_constant(multi_cusp)
    return (1.0 + z * z) ** 2 / (2.0 * c * z**3 * (3.0 - z * z))


def F(z: float) -> float:  # noqa: N802
    """Regular part of H'/(H + G) after removing 1/(1 - z)."""
    _require_z(z, closed=True)
    return -(1.0 + 4.0 * z + 6.0 * z**2 + z**4) / ((1.0 + z) * (1.0 + z * z) ** 2)


def dH_dz(z: float, multi_cusp: bool = False) -> float:  # noqa: N802
    """Derivative of H: (z^4 + 4z^2 - 1) / (C z^2 (1 - z^2)^2).

    Vanishes at z^2 = sqrt(5) - 2, the top of the hump, and is positive above it.
    """
    _require_z(z, closed=False)
    c = get_constants().cusp_constant(multi_cusp)
    gap2 = (1.0 - z) * (1.0 + z)
    return (z**4 + 4.0 * z * z - 1.0) / (c * z * z * gap2 * gap2)


def closed_geodesic_length_lower(r: float) -> float:
    """Lower bound on the length of a closed geodesic with tube radius r.

    In a smooth manifold the cone angle is 2*pi, so ell >= h(r)/(2*pi),
    about 0.5404 tanh(r)/cosh(2r).
    """
    return h(r) / (2.0 * math.pi)


def upper_kernel(z: float) -> float:
    """H'/(H - G~), the kernel of the upper z-envelope.

    C cancels, so the cusp-count flag does not enter. Positive on [z1, 1).

    Raises:
        DomainError: Unless sqrt(2) - 1 < z < 1, where H - G~ > 0
    """
    _require_z(z, closed=False)
    if z <= UPPER_KERNEL_Z_MIN:
        raise DomainError(f"H - G~ vanishes or is negative at z={z!r}")
    return dH_dz(z) / (H(z) - Gtilde(z))


def Ftilde(z: float) -> float:  # noqa: N802
    """Regular part of the upper kernel: H'/(H - G~) - 1/(1 - z).

    Within KERNEL_BOUNDARY_LAYER of z = 1 the difference of two huge numbers
    is replaced by its limit 1/2.
    """
    _require_z(z, closed=True)
    if 1.0 - z < KERNEL_BOUNDARY_LAYER:
        return FTILDE_AT_ONE
    return upper_kernel(z) - 1.0 / (1.0 - z)
