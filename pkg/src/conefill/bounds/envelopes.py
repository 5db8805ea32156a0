"""Envelopes of cone-manifold deformation paths.

Paths are parameterized by t = alpha^2 and start at the complete structure
(t = 0, z = 1, u = L_hat^2). Along any path with z >= z1

    H'(z)/(H(z) + G(z)) dz/dt  <=  -1/t  <=  H'(z)/(H(z) - G~(z)) dz/dt

and the equality cases integrate in closed form:

    t_lo(z) = C L_hat^2 (1 - z) exp(int_z^1 F)
    t_hi(z) = C L_hat^2 (1 - z) exp(int_z^1 F~)

Both are strictly decreasing in z, so at time t the z-coordinate lies in
[t_lo^{-1}(t), t_hi^{-1}(t)]. The log singularity at z = 1 is always carried
by the explicit (1 - z) factor; only F and F~ go through quadrature.
Inversions work in x = log(1 - z), which keeps full relative precision in
the gap 1 - z near the complete structure.
"""

import logging
import math
from collections.abc import Callable
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy import integrate

from conefill.bounds.errors import DomainError, HumpExceededError
from conefill.bounds.numerics import (
    DEFAULT_TOLERANCES,
    Tolerances,
    find_root,
    integrate_interval,
)
from conefill.bounds.scalar import (
    RHO1,
    Z1,
    F,
    Ftilde,
    G,
    Gtilde,
    H,
    TubeRadius,
    dH_dz,
    get_constants,
)
from conefill.bounds.volume import volume_drop_integrals
from conefill.models import (
    Bracket,
    ConeState,
    DrillingCriterion,
    DrillingDecision,
    EnvelopeCurve,
    EnvelopeSample,
)

logger = logging.getLogger(__name__)

T_FULL = (2.0 * math.pi) ** 2

# Geodesic length and tube radius thresholds of the drilling criteria
SHORT_GEODESIC_LENGTH = 0.111
SHORT_GEODESIC_RADIUS = 0.982  # imported tube radius bound for ell <= 0.111
SHORTEST_GEODESIC_LENGTH = 0.162
SHORTEST_GEODESIC_RADIUS = math.log(3.0) / 2.0

# Start of the numerical equality-path integration
ODE_T_START = 1e-6
ODE_RTOL = 1e-12
ODE_ATOL = 1e-12

# Smallest cone angle of the log-spaced part of an envelope curve
ALPHA_LOG_START = 1e-3

EnvelopeKind = Literal["lower", "upper"]


def _require_lhat(L_hat: float) -> None:  # noqa: N803
    if not (math.isfinite(L_hat) and L_hat > 0.0):
        raise DomainError(f"Normalized length must be positive, got {L_hat!r}")


def _require_alpha(alpha: float) -> None:
    if not (math.isfinite(alpha) and 0.0 < alpha <= 2.0 * math.pi):
        raise DomainError(f"Cone angle must lie in (0, 2*pi], got {alpha!r}")


def _regular_integral(
    regular: Callable[[float], float], z: float, tol: Tolerances
) -> float:
    return integrate_interval(regular, z, 1.0, tol)


def _log_scale(L_hat: float, multi_cusp: bool) -> float:  # noqa: N803
    return math.log(get_constants().cusp_constant(multi_cusp) * L_hat * L_hat)


def first_time_lower_bound(
    z: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Earliest t at which a path from the cusp can reach z.

    Args:
        z: Target z-coordinate in [z1, 1)
        L_hat: Normalized length of the filling slope
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        C L_hat^2 (1 - z) exp(int_z^1 F)

    Raises:
        DomainError: If z is outside [z1, 1) or L_hat is not positive
    """
    _require_lhat(L_hat)
    if not (math.isfinite(z) and Z1 <= z < 1.0):
        raise DomainError(f"z must lie in [{Z1}, 1), got {z!r}")
    c = get_constants().cusp_constant(multi_cusp)
    return c * L_hat * L_hat * (1.0 - z) * math.exp(_regular_integral(F, z, tol))


def validity_limit(
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Largest t for which the envelopes are valid (lower envelope reaches z1)."""
    return first_time_lower_bound(Z1, L_hat, multi_cusp, tol)


def critical_normalized_length(
    multi_cusp: bool = False,
    cone_angle: float = 2.0 * math.pi,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Smallest normalized length that keeps z >= z1 up to the given cone angle.

    The threshold is linear in the cone angle; at 2*pi it is about 7.5146
    for one cusp and sqrt(2) times that for several.

    Args:
        multi_cusp: Use the multi-cusp constant
        cone_angle: Final cone angle, in (0, 2*pi]
        tol: Numerical tolerances

    Returns:
        Critical normalized length
    """
    _require_alpha(cone_angle)
    c = get_constants().cusp_constant(multi_cusp)
    unit_time = c * (1.0 - Z1) * math.exp(_regular_integral(F, Z1, tol))
    return cone_angle / math.sqrt(unit_time)


def orbifold_filling_threshold(
    order: int,
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Normalized length beyond which an orbifold filling of the given order exists.

    Cone angle 2*pi/order is reached once L_hat exceeds threshold/order.
    """
    if order < 1:
        raise DomainError(f"Orbifold order must be a positive integer, got {order!r}")
    return critical_normalized_length(multi_cusp, tol=tol) / order


def _invert_gap(
    regular: Callable[[float], float],
    log_target: float,
    tol: Tolerances,
) -> float:
    """Solve x + int_{1-e^x}^1 regular = log_target for x in (-inf, log(1 - z1)].

    Returns the gap e^x. Callers guarantee a solution exists on the bracket.
    """
    x_top = math.log(1.0 - Z1)

    def residual(x: float) -> float:
        return x + _regular_integral(regular, 1.0 - math.exp(x), tol) - log_target

    if residual(x_top) <= 0.0:
        return 1.0 - Z1
    # The regular integrals are bounded by 1/2 times the gap from above
    x_lo = min(log_target - 2.0, x_top - 1.0)
    return math.exp(find_root(residual, x_lo, x_top, tol))


def _z_gaps(
    t: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool,
    tol: Tolerances,
) -> tuple[float, float]:
    """Gaps 1 - z of the lower and upper envelopes at time t (lower gap first)."""
    _require_lhat(L_hat)
    if not (math.isfinite(t) and 0.0 < t <= T_FULL * (1.0 + 1e-12)):
        raise DomainError(f"t must lie in (0, (2*pi)^2], got {t!r}")
    t_max = validity_limit(L_hat, multi_cusp, tol)
    if t > t_max:
        raise HumpExceededError(
            f"Lower z-envelope reaches z1 at t={t_max:.12g} before t={t:.12g} "
            f"(L_hat={L_hat:.12g})",
            t_max=t_max,
        )
    log_target = math.log(t) - _log_scale(L_hat, multi_cusp)
    gap_lo = _invert_gap(F, log_target, tol)
    gap_hi = _invert_gap(Ftilde, log_target, tol)
    return gap_lo, min(gap_hi, gap_lo)


def z_envelope(
    t: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Bracket:
    """Two-sided bound on z at time t = alpha^2.

    Args:
        t: Squared cone angle, 0 < t <= (2*pi)^2
        L_hat: Normalized length of the filling slope
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances

    Returns:
        Bracket [z_lo, z_hi], both decreasing in t

    Raises:
        HumpExceededError: If t is beyond the validity limit (carries t_max)
    """
    gap_lo, gap_hi = _z_gaps(t, L_hat, multi_cusp, tol)
    return Bracket(lo=1.0 - gap_lo, hi=1.0 - gap_hi)


def _rho_from_gap(gap: float) -> float:
    # arctanh(1 - gap)
    return 0.5 * math.log((2.0 - gap) / gap)


def _alpha_ell_from_gap(gap: float, c: float) -> float:
    # 1/H(z) with 1 - z^2 = gap (2 - gap)
    z = 1.0 - gap
    return c * z * gap * (1.0 + z) / (1.0 + z * z)


def tube_radius_lower(
    alpha: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> TubeRadius:
    """Lower bound on the tube radius at cone angle alpha."""
    _require_alpha(alpha)
    gap_lo, _ = _z_gaps(alpha * alpha, L_hat, multi_cusp, tol)
    return TubeRadius(_rho_from_gap(gap_lo))


def core_length_bracket(
    alpha: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Bracket:
    """Two-sided bound on the core length ell = 1/(alpha H(z)) at cone angle alpha."""
    _require_alpha(alpha)
    gap_lo, gap_hi = _z_gaps(alpha * alpha, L_hat, multi_cusp, tol)
    c = get_constants().cusp_constant(multi_cusp)
    return Bracket(
        lo=_alpha_ell_from_gap(gap_hi, c) / alpha,
        hi=_alpha_ell_from_gap(gap_lo, c) / alpha,
    )


def u_bracket(
    t: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Bracket:
    """Two-sided bound on u = alpha/ell = t H(z); tends to L_hat^2 as t -> 0."""
    gap_lo, gap_hi = _z_gaps(t, L_hat, multi_cusp, tol)
    c = get_constants().cusp_constant(multi_cusp)
    return Bracket(
        lo=t / _alpha_ell_from_gap(gap_lo, c),
        hi=t / _alpha_ell_from_gap(gap_hi, c),
    )


def du_dt_bounds(z: float, multi_cusp: bool = False) -> Bracket:
    """Bracket [-G(z), G~(z)] on du/dt, valid for z >= z1."""
    if not (math.isfinite(z) and Z1 <= z <= 1.0):
        raise DomainError(f"z must lie in [{Z1}, 1], got {z!r}")
    return Bracket(lo=-G(z, multi_cusp), hi=Gtilde(z, multi_cusp))


def cone_state(alpha: float, z: float, multi_cusp: bool = False) -> ConeState:
    """Build a consistent ConeState from a cone angle and a z-coordinate."""
    _require_alpha(alpha)
    t = alpha * alpha
    hz = H(z, multi_cusp)
    u = t * hz
    return ConeState(
        alpha=alpha, t=t, z=z, u=u, rho=math.atanh(z), ell=1.0 / (alpha * hz)
    )


def alpha_ell_monotone_threshold() -> TubeRadius:
    """Radius above which alpha*ell increases with alpha.

    Solves 4s^4 + 4s^2 - 1 = 0 for s = sinh R: s^2 = (sqrt 2 - 1)/2.
    """
    return TubeRadius(math.asinh(math.sqrt((math.sqrt(2.0) - 1.0) / 2.0)))


def drilling_predicates(
    ell: float,
    R_known: float | None = None,  # noqa: N803
    shortest: bool = False,
) -> DrillingDecision:
    """Decide which criterion allows drilling a closed geodesic of length ell.

    Criteria, in order of preference:
      length_and_radius: ell <= h_max/(2*pi) and a known tube radius >= rho1
      short_geodesic: ell <= 0.111
      shortest_geodesic: the geodesic is shortest and ell <= 0.162

    Args:
        ell: Geodesic length, positive
        R_known: Known lower bound on its tube radius, if any
        shortest: The geodesic is the shortest in the manifold

    Returns:
        DrillingDecision naming the first applicable criterion
    """
    if not (math.isfinite(ell) and ell > 0.0):
        raise DomainError(f"Geodesic length must be positive, got {ell!r}")
    length_limit = get_constants().h_max / (2.0 * math.pi)

    applicable: list[DrillingCriterion] = []
    radii: list[float] = []
    reasons: list[str] = []
    if R_known is not None and ell <= length_limit and R_known >= RHO1:
        applicable.append(DrillingCriterion.LENGTH_AND_RADIUS)
        radii.append(R_known)
        reasons.append(
            f"length {ell:g} <= {length_limit:.4f} and tube radius "
            f"{R_known:g} >= {RHO1}"
        )
    if ell <= SHORT_GEODESIC_LENGTH:
        applicable.append(DrillingCriterion.SHORT_GEODESIC)
        radii.append(SHORT_GEODESIC_RADIUS)
        reasons.append(f"length {ell:g} <= {SHORT_GEODESIC_LENGTH}")
    if shortest and ell <= SHORTEST_GEODESIC_LENGTH:
        applicable.append(DrillingCriterion.SHORTEST_GEODESIC)
        radii.append(SHORTEST_GEODESIC_RADIUS)
        reasons.append(
            f"shortest geodesic with length {ell:g} <= {SHORTEST_GEODESIC_LENGTH}"
        )

    if not applicable:
        return DrillingDecision(
            ell=ell,
            criterion=None,
            applicable=(),
            radius_lower=R_known,
            reason="no criterion applies",
        )
    if R_known is not None:
        radii.append(R_known)
    return DrillingDecision(
        ell=ell,
        criterion=applicable[0],
        applicable=tuple(applicable),
        radius_lower=max(radii),
        reason="; ".join(reasons),
    )


def integrate_equality_path(
    L_hat: float,  # noqa: N803
    t_end: float,
    kind: EnvelopeKind = "lower",
    multi_cusp: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Integrate the equality case of a z-inequality numerically.

    Works in s = log t and y = log(1 - z), where

        dy/ds = (H +/- G)/(H' (1 - z))

    stays close to 1. The start point at t = 1e-6 comes from the closed form.

    Args:
        L_hat: Normalized length of the filling slope
        t_end: Final time, ODE_T_START < t_end <= (2*pi)^2
        kind: "lower" follows H + G, "upper" follows H - G~
        multi_cusp: Use the multi-cusp constant
        tol: Numerical tolerances for the starting point

    Returns:
        z at t_end

    Raises:
        DomainError: If the integrator fails
    """
    if not ODE_T_START < t_end <= T_FULL * (1.0 + 1e-12):
        raise DomainError(f"t_end must lie in ({ODE_T_START}, (2*pi)^2], got {t_end!r}")
    gap_lo, gap_hi = _z_gaps(ODE_T_START, L_hat, multi_cusp, tol)
    y0 = math.log(gap_lo if kind == "lower" else gap_hi)
    sign = 1.0 if kind == "lower" else -1.0

    def rate(_s: float, y: npt.NDArray[np.float64]) -> list[float]:
        z = -math.expm1(float(y[0]))
        hz = H(z, multi_cusp)
        rate_bound = G(z, multi_cusp) if kind == "lower" else Gtilde(z, multi_cusp)
        return [(hz + sign * rate_bound) / (dH_dz(z, multi_cusp) * (1.0 - z))]

    solution = integrate.solve_ivp(
        rate,
        (math.log(ODE_T_START), math.log(t_end)),
        [y0],
        method="DOP853",
        rtol=ODE_RTOL,
        atol=ODE_ATOL,
    )
    if not solution.success:
        raise DomainError(f"Equality path integration failed: {solution.message}")
    return -math.expm1(float(solution.y[0, -1]))


def sample_cone_angles(n: int) -> npt.NDArray[np.float64]:
    """Cone angles for an envelope curve: log-spaced up to 1, then linear to 2*pi.

    The last angle is exactly 2*pi.
    """
    min_samples = 2
    if n < min_samples:
        raise DomainError(f"Need at least {min_samples} samples, got {n}")
    n_log = n // 2
    n_lin = n - n_log
    log_part = np.geomspace(ALPHA_LOG_START, 1.0, n_log)
    lin_part = np.linspace(1.0, 2.0 * np.pi, n_lin + 1)[1:]
    return np.concatenate([log_part, lin_part])


def _sample(
    alpha: float,
    t: float,
    L_hat: float,  # noqa: N803
    multi_cusp: bool,
    tol: Tolerances,
) -> EnvelopeSample:
    gap_lo, gap_hi = _z_gaps(t, L_hat, multi_cusp, tol)
    c = get_constants().cusp_constant(multi_cusp)
    z_lo = 1.0 - gap_lo
    z_hi = 1.0 - gap_hi
    # Delta V is monotone in the final z: smallest z gives the largest drop
    drop_at_hi = volume_drop_integrals(z_hi, multi_cusp, tol)
    drop_at_lo = volume_drop_integrals(z_lo, multi_cusp, tol)
    return EnvelopeSample(
        alpha=alpha,
        t=t,
        z=Bracket(lo=z_lo, hi=z_hi),
        rho_lo=_rho_from_gap(gap_lo),
        ell=Bracket(
            lo=_alpha_ell_from_gap(gap_hi, c) / alpha,
            hi=_alpha_ell_from_gap(gap_lo, c) / alpha,
        ),
        v_drop=Bracket(lo=drop_at_hi.lo, hi=max(drop_at_lo.hi, drop_at_hi.lo)),
    )


def envelope_curve(
    L_hat: float,  # noqa: N803
    multi_cusp: bool = False,
    n_samples: int = 100,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> EnvelopeCurve:
    """Sample the deformation envelopes from the cusp to cone angle 2*pi.

    When the lower z-envelope reaches z1 first, sampling stops there and a
    final sample sits exactly at the validity limit t_max.

    Args:
        L_hat: Normalized length of the filling slope
        multi_cusp: Use the multi-cusp constant
        n_samples: Number of cone angles (before truncation)
        tol: Numerical tolerances

    Returns:
        EnvelopeCurve
    """
    _require_lhat(L_hat)
    t_max = validity_limit(L_hat, multi_cusp, tol)
    samples: list[EnvelopeSample] = []
    truncated = False
    for alpha in sample_cone_angles(n_samples):
        a = float(alpha)
        t = a * a
        if t > t_max:
            truncated = True
            break
        samples.append(_sample(a, t, L_hat, multi_cusp, tol))

    if truncated:
        logger.warning(
            "Envelope for L_hat=%.12g stops at alpha=%.12g (t_max=%.12g)",
            L_hat,
            math.sqrt(t_max),
            t_max,
        )
        if not samples or samples[-1].t < t_max:
            samples.append(
                _sample(math.sqrt(t_max), t_max, L_hat, multi_cusp, tol)
            )

    return EnvelopeCurve(
        L_hat=L_hat,
        multi_cusp=multi_cusp,
        quad_tol=tol.quad_abs,
        root_tol=tol.root,
        t_max=t_max,
        truncated=truncated,
        samples=tuple(samples),
    )
