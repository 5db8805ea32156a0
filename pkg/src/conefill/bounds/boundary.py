"""Boundary terms on the tube boundary torus and the core-length derivative bound.

An infinitesimal deformation is written as

    omega_0 = -1/(4 alpha^2) omega_m + (x + iy) omega_l + (correction)

and the boundary term per unit area of T_R is the quadratic
a(x^2 + y^2) + b x + c. Its non-negativity confines (x, y) to a disk and
x to [x_lo, x_hi], which bounds d ell / d alpha.

All values here are per unit area; area(T_R) never enters.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from conefill.bounds.errors import DomainError
from conefill.models import Bracket

logger = logging.getLogger(__name__)


class FormKind(str, Enum):
    """Standard harmonic forms in the cylindrical frame."""

    MERIDIAN = "meridian"  # changes the cone angle, keeps Re of meridian length
    LONGITUDE = "longitude"  # stretches the core, keeps the cone angle


def _require_radius(r: float) -> None:
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"Radius must be positive and finite, got {r!r}")


def _require_angle(alpha: float) -> None:
    if not (math.isfinite(alpha) and 0.0 < alpha <= 2.0 * math.pi):
        raise DomainError(f"Cone angle must lie in (0, 2*pi], got {alpha!r}")


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True, eq=False)
class StandardFormMatrix:
    """Coefficient matrix of a standard form at radius r.

    Entry (i, j) is the coefficient of e_i (x) omega_j in the orthonormal
    frame (r, theta, zeta).
    """

    kind: FormKind
    r: float
    entries: npt.NDArray[np.complex128] = field(repr=False)

    @property
    def trace(self) -> complex:
        """Trace of the coefficient matrix."""
        return complex(np.trace(self.entries))

    def is_symmetric(self, atol: float = 1e-14) -> bool:
        """Check entries[i, j] == entries[j, i]."""
        return bool(np.allclose(self.entries, self.entries.T, rtol=0.0, atol=atol))

    def is_traceless(self, atol: float = 1e-14) -> bool:
        """Check that real and imaginary parts of the trace vanish."""
        tr = self.trace
        return abs(tr.real) <= atol and abs(tr.imag) <= atol


def standard_form(kind: FormKind, r: float) -> StandardFormMatrix:
    """Build the standard form matrix of the given kind at radius r.

    Args:
        kind: Meridian or longitude form
        r: Distance from the singular locus, positive

    Returns:
        StandardFormMatrix with the closed-form entries

    Raises:
        DomainError: If r is not positive
    """
    _require_radius(r)
    s = math.sinh(r)
    c = math.cosh(r)
    if kind is FormKind.MERIDIAN:
        off = -1j / (c * s)
        entries = [
            [-1.0 / (c * c * s * s), 0.0, 0.0],
            [0.0, 1.0 / (s * s), off],
            [0.0, off, -1.0 / (c * c)],
        ]
    else:
        off = -1j * s / c
        entries = [
            [-1.0 / (c * c), 0.0, 0.0],
            [0.0, -1.0, off],
            [0.0, off, (c * c + 1.0) / (c * c)],
        ]
    return StandardFormMatrix(
        kind=kind, r=r, entries=np.array(entries, dtype=np.complex128)
    )


@dataclass(frozen=True)
class FluxCoefficients:
    """Boundary quadratic a(x^2 + y^2) + b x + c per unit area of T_R."""

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        """b^2 - 4ac, equal to tanh^2(R)/m^4."""
        return self.b * self.b - 4.0 * self.a * self.c

    @property
    def maximum(self) -> float:
        """Largest value of the quadratic: (4ac - b^2)/(4a)."""
        return (4.0 * self.a * self.c - self.b * self.b) / (4.0 * self.a)

    def value(self, x: float, y: float) -> float:
        """Evaluate the quadratic at (x, y)."""
        return self.a * (x * x + y * y) + self.b * x + self.c


@dataclass(frozen=True)
class BoundaryPairings:
    """Closed-form boundary pairings of eta_m and eta_l, divided by area(T_R).

    The pairing of *D eta_l with itself equals bll; cross terms with *D eta_l
    vanish.
    """

    bmm: float
    bll: float
    bml: float
    blm: float

    def assemble(self, alpha: float) -> FluxCoefficients:
        """Expand the boundary term of -1/(4 alpha^2) eta_m + x eta_l + y *D eta_l."""
        _require_angle(alpha)
        a2 = alpha * alpha
        return FluxCoefficients(
            a=self.bll,
            b=-(self.bml + self.blm) / (4.0 * a2),
            c=self.bmm / (16.0 * a2 * a2),
        )


def boundary_pairings(R: float) -> BoundaryPairings:  # noqa: N803
    """Boundary pairings at tube radius R, per unit area.

    Args:
        R: Tube radius, positive

    Returns:
        BoundaryPairings (bmm > 0, bll < 0)
    """
    _require_radius(R)
    s = math.sinh(R)
    c = math.cosh(R)
    meridian_factor = 1.0 / (s * s) + 1.0 / (c * c)
    longitude_factor = 2.0 + 1.0 / (c * c)
    return BoundaryPairings(
        bmm=meridian_factor / (s * c),
        bll=-(s / c) * longitude_factor,
        bml=-longitude_factor / (s * c),
        blm=(s / c) * meridian_factor,
    )


@dataclass(frozen=True)
class MeridianGeometry:
    """Flat geometry of the tube boundary torus T_R.

    m = alpha sinh R is the meridian length; with a core length the torus
    height is ell cosh R and the area is m times the height.
    """

    R: float
    alpha: float
    m: float
    ell: float | None = None
    height: float | None = None
    area: float | None = None

    @classmethod
    def from_cone(
        cls,
        R: float,  # noqa: N803
        alpha: float,
        ell: float | None = None,
    ) -> "MeridianGeometry":
        """Derive meridian length, height and area from (R, alpha, ell)."""
        _require_radius(R)
        _require_angle(alpha)
        m = alpha * math.sinh(R)
        if ell is None:
            return cls(R=R, alpha=alpha, m=m)
        _require_positive("Core length", ell)
        height = ell * math.cosh(R)
        return cls(R=R, alpha=alpha, m=m, ell=ell, height=height, area=m * height)


def _coefficients(R: float, m: float) -> FluxCoefficients:  # noqa: N803
    t = math.tanh(R)
    c2 = math.cosh(R) ** 2
    m2 = m * m
    return FluxCoefficients(
        a=-t * (2.0 * c2 + 1.0) / c2,
        b=t / (2.0 * m2 * c2),
        c=(t + t**3) / (16.0 * m2 * m2),
    )


def flux_coefficients(R: float, alpha: float) -> FluxCoefficients:  # noqa: N803
    """Coefficients of the boundary quadratic, written with m = alpha sinh R.

    Args:
        R: Tube radius, positive
        alpha: Cone angle in (0, 2*pi]

    Returns:
        FluxCoefficients with a < 0 < b, c
    """
    _require_radius(R)
    _require_angle(alpha)
    return _coefficients(R, alpha * math.sinh(R))


@dataclass(frozen=True)
class XInterval:
    """Range of the longitude coefficient x allowed by positivity."""

    x_lo: float
    x_hi: float

    @property
    def center(self) -> float:
        """-b/(2a)."""
        return 0.5 * (self.x_lo + self.x_hi)

    @property
    def radius(self) -> float:
        """sqrt(b^2 - 4ac)/(2|a|)."""
        return 0.5 * (self.x_hi - self.x_lo)


def x_lo_factor(R: float) -> float:  # noqa: N803
    """(2cosh^2 R - 1)/(2cosh^2 R + 1), computed as (2s^2 + 1)/(2s^2 + 3).

    Increases from 1/3 at R = 0 towards 1.
    """
    s2 = math.sinh(R) ** 2
    return (2.0 * s2 + 1.0) / (2.0 * s2 + 3.0)


def x_interval(R: float, alpha: float) -> XInterval:  # noqa: N803
    """Roots of a x^2 + b x + c, the interval containing x.

    Args:
        R: Tube radius, positive
        alpha: Cone angle in (0, 2*pi]

    Returns:
        XInterval with x_hi = 1/(4m^2)
    """
    _require_radius(R)
    _require_angle(alpha)
    m2 = (alpha * math.sinh(R)) ** 2
    return XInterval(x_lo=-x_lo_factor(R) / (4.0 * m2), x_hi=1.0 / (4.0 * m2))


def b00_upper(R: float, m: float) -> float:  # noqa: N803
    """Upper bound on the boundary term per unit area.

    Args:
        R: Tube radius, positive
        m: Meridian length, positive

    Returns:
        sinh R cosh R / (4 m^4 (2 cosh^2 R + 1))
    """
    _require_radius(R)
    _require_positive("Meridian length", m)
    c2 = math.cosh(R) ** 2
    return math.sinh(R) * math.cosh(R) / (4.0 * m**4 * (2.0 * c2 + 1.0))


def xy_admissible(
    x: float,
    y: float,
    R: float,  # noqa: N803
    m: float,
    rtol: float = 1e-12,
) -> bool:
    """Check (x + b/2a)^2 + y^2 <= (b^2 - 4ac)/(4a^2).

    Args:
        x: Real part of the longitude coefficient
        y: Imaginary part of the longitude coefficient
        R: Tube radius
        m: Meridian length
        rtol: Relative slack on the squared radius

    Returns:
        True if (x, y) lies in the closed disk
    """
    _require_radius(R)
    _require_positive("Meridian length", m)
    q = _coefficients(R, m)
    center = -q.b / (2.0 * q.a)
    radius2 = q.discriminant / (4.0 * q.a * q.a)
    return (x - center) ** 2 + y * y <= radius2 * (1.0 + rtol)


def keybound_interval(R: float) -> Bracket:  # noqa: N803
    """Bounds on 4 alpha^2 x, independent of alpha.

    Returns:
        [-(1/s^2)(2s^2 + 1)/(2s^2 + 3), 1/s^2] with s = sinh R
    """
    _require_radius(R)
    s2 = math.sinh(R) ** 2
    return Bracket(lo=-x_lo_factor(R) / s2, hi=1.0 / s2)


def dl_dalpha_bounds(ell: float, alpha: float, R: float) -> Bracket:  # noqa: N803
    """Two-sided bound on d ell / d alpha = (ell/alpha)(1 + 4 alpha^2 x).

    Args:
        ell: Core length, positive
        alpha: Cone angle in (0, 2*pi]
        R: Tube radius, positive

    Returns:
        Bracket whose lower end is non-negative iff R >= arcsinh(1/sqrt 2)
    """
    _require_positive("Core length", ell)
    _require_angle(alpha)
    key = keybound_interval(R)
    scale = ell / alpha
    return Bracket(lo=scale * (1.0 + key.lo), hi=scale * (1.0 + key.hi))


def complex_length_derivative(
    L: complex,  # noqa: N803
    alpha: float,
    x: float,
    y: float,
) -> complex:
    """Derivative in t = alpha^2 of a complex length under omega_0.

    Args:
        L: Complex length (real part length, imaginary part rotation)
        alpha: Cone angle, positive
        x: Real part of the longitude coefficient
        y: Imaginary part of the longitude coefficient

    Returns:
        L/(2 alpha^2) + 2 Re(L)(x + iy)
    """
    _require_positive("Cone angle", alpha)
    return L / (2.0 * alpha * alpha) + 2.0 * L.real * complex(x, y)


def length_monotone_radius() -> float:
    """Radius above which core length increases with cone angle: arcsinh(1/sqrt 2)."""
    return math.asinh(1.0 / math.sqrt(2.0))


def meridian_complex_length(alpha: float) -> complex:
    """Complex length of the meridian of a cone angle alpha: i alpha."""
    _require_positive("Cone angle", alpha)
    return complex(0.0, alpha)
