"""Reference constants and the cross-module invariant suite.

`constant_rows` recomputes the published constants and compares them with
their reference values. `run_checks` evaluates identities and bounds across
all modules; the `check` command reports its results group by group.
"""

import logging
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass

import numpy as np

from conefill.bounds import boundary, envelopes, packing, scalar, volume
from conefill.bounds.errors import BoundsError
from conefill.bounds.numerics import DEFAULT_TOLERANCES, Tolerances
from conefill.models import CUSPED_VOLUME_MIN
from conefill.slopes import counting, lattice
from conefill.slopes.models import CuspShape

logger = logging.getLogger(__name__)

RANDOM_SHAPE_COUNT = 100
IDENTITY_GRID = 20


@dataclass(frozen=True)
class ConstantRow:
    """A recomputed constant next to its reference value."""

    name: str
    computed: float
    reference: float
    tolerance: float

    @property
    def diff(self) -> float:
        """Absolute difference from the reference."""
        return abs(self.computed - self.reference)

    @property
    def ok(self) -> bool:
        """Whether the difference is within tolerance."""
        return self.diff <= self.tolerance


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check."""

    group: str
    name: str
    passed: bool
    detail: str = ""


def constant_rows(tol: Tolerances = DEFAULT_TOLERANCES) -> list[ConstantRow]:
    """Recompute the reference constants.

    Args:
        tol: Numerical tolerances

    Returns:
        One row per constant, in a fixed order
    """
    consts = scalar.get_constants()
    threshold = envelopes.critical_normalized_length(False, tol=tol)
    multi = envelopes.critical_normalized_length(True, tol=tol)
    monotone_radius = float(envelopes.alpha_ell_monotone_threshold())
    drop_at_z1 = volume.volume_drop_integrals(scalar.Z1, tol=tol).hi
    min_volume = volume.min_volume_after_filling(CUSPED_VOLUME_MIN, tol)
    two_pi = 2.0 * math.pi
    coefficient = consts.c_single / two_pi
    return [
        ConstantRow("h_max", consts.h_max, 1.019675, 1e-5),
        ConstantRow("r_at_hmax", consts.r_at_hmax, 0.5306, 1e-3),
        ConstantRow("cusp_constant", consts.c_single, 3.3957, 1e-3),
        ConstantRow("threshold", threshold, 7.5146, 5e-3),
        ConstantRow("threshold_squared", threshold**2, 56.4696, 0.05),
        ConstantRow("threshold_multi", multi, 10.6273, 1e-2),
        ConstantRow(
            "length_monotone_radius", boundary.length_monotone_radius(), 0.65848, 1e-5
        ),
        ConstantRow("alpha_ell_monotone_radius", monotone_radius, 0.4407, 1e-4),
        ConstantRow("delta_v_upper_at_z1", drop_at_z1, 0.3287, 1e-3),
        ConstantRow("min_volume_after_filling", min_volume, 1.7012, 2e-3),
        ConstantRow("closed_geodesic_coefficient", coefficient, 0.5404, 1e-4),
        ConstantRow("max_core_length", consts.h_max / two_pi, 0.16229, 1e-5),
    ]


def _constants(tol: Tolerances) -> Iterator[CheckResult]:
    for row in constant_rows(tol):
        yield CheckResult(
            "constants",
            row.name,
            row.ok,
            f"computed {row.computed:.10g}, reference {row.reference:g}",
        )


def _identities(_tol: Tolerances) -> Iterator[CheckResult]:
    radii = np.linspace(0.1, 3.0, IDENTITY_GRID)
    angles = np.linspace(0.1, 2.0 * np.pi, IDENTITY_GRID)
    worst_disc = 0.0
    worst_max = 0.0
    for R in radii:  # noqa: N806
        for alpha in angles:
            coeffs = boundary.flux_coefficients(float(R), float(alpha))
            m = float(alpha * np.sinh(R))
            expected = math.tanh(R) ** 2 / m**4
            worst_disc = max(worst_disc, abs(coeffs.discriminant / expected - 1.0))
            b00 = boundary.b00_upper(float(R), m)
            worst_max = max(worst_max, abs(coeffs.maximum / b00 - 1.0))
    yield CheckResult(
        "identities", "discriminant", worst_disc <= 1e-12, f"max rel {worst_disc:.2e}"
    )
    yield CheckResult(
        "identities", "b00_upper", worst_max <= 1e-12, f"max rel {worst_max:.2e}"
    )

    worst_f = 0.0
    for z in np.linspace(0.1, 1.0 - 1e-6, 200):
        zf = float(z)
        kernel = scalar.dH_dz(zf) / (scalar.H(zf) + scalar.G(zf))
        regular = scalar.F(zf) + 1.0 / (1.0 - zf)
        worst_f = max(worst_f, abs(kernel - regular) / abs(regular))
    yield CheckResult(
        "identities", "lower_kernel", worst_f <= 1e-10, f"max rel {worst_f:.2e}"
    )

    forms_ok = all(
        form.is_symmetric() and form.is_traceless()
        for R in radii
        for form in (
            boundary.standard_form(boundary.FormKind.MERIDIAN, float(R)),
            boundary.standard_form(boundary.FormKind.LONGITUDE, float(R)),
        )
    )
    yield CheckResult("identities", "standard_forms", forms_ok)


def _envelope(tol: Tolerances) -> Iterator[CheckResult]:
    full = 2.0 * math.pi
    rho = envelopes.tube_radius_lower(full, 7.515, tol=tol)
    yield CheckResult(
        "envelope", "radius_at_threshold", rho >= scalar.RHO1, f"rho_lo {rho:.6f}"
    )
    ell = envelopes.core_length_bracket(full, 7.515, tol=tol)
    yield CheckResult(
        "envelope", "core_length_at_threshold", ell.hi <= 0.16229, f"{ell.hi:.6f}"
    )
    t_max = envelopes.validity_limit(7.40, tol=tol)
    yield CheckResult(
        "envelope",
        "truncates_below_threshold",
        t_max < envelopes.T_FULL,
        f"alpha_max {math.sqrt(min(t_max, envelopes.T_FULL)):.6f}",
    )
    z = envelopes.z_envelope(envelopes.T_FULL, 7.515, tol=tol)
    z_ode_lo = envelopes.integrate_equality_path(
        7.515, envelopes.T_FULL, "lower", tol=tol
    )
    z_ode_hi = envelopes.integrate_equality_path(
        7.515, envelopes.T_FULL, "upper", tol=tol
    )
    gap = max(abs(z_ode_lo - z.lo), abs(z_ode_hi - z.hi))
    yield CheckResult("envelope", "ode_agreement", gap <= 1e-6, f"max diff {gap:.2e}")


def _volume(tol: Tolerances) -> Iterator[CheckResult]:
    ell = 1e-4
    result = volume.delta_v_bounds(ell, tol=tol)
    lo = result.delta_v.lo / result.nz_asymptote
    hi = result.delta_v.hi / result.nz_asymptote
    yield CheckResult(
        "volume",
        "short_core_asymptote",
        0.95 <= lo <= hi <= 1.05,
        f"ratios [{lo:.4f}, {hi:.4f}]",
    )
    sweep = [
        volume.delta_v_bounds(float(x), tol=tol).delta_v.hi
        for x in np.linspace(0.001, 0.162, 25)
    ]
    monotone = all(b >= a for a, b in zip(sweep, sweep[1:], strict=False))
    yield CheckResult("volume", "monotone_upper_bound", monotone)


def _packing(_tol: Tolerances) -> Iterator[CheckResult]:
    for R in (0.55, 0.8, 1.2):  # noqa: N806
        theta, zeta = packing.ellipse_boundary(R, 64)
        inside = all(
            packing.ball_projection_contains(2.0 * R, R, float(th), float(ze))
            for th, ze in zip(theta, zeta, strict=True)
        )
        yield CheckResult("packing", f"ellipse_in_projection[R={R}]", inside)

    worst = 0.0
    for R in np.linspace(0.1, 3.0, IDENTITY_GRID):  # noqa: N806
        ratio = packing.torus_area_lower_bound(float(R)) / (np.sinh(R) * np.cosh(R))
        worst = max(worst, abs(ratio / scalar.h(float(R)) - 1.0))
    yield CheckResult("packing", "area_matches_h", worst <= 1e-12, f"{worst:.2e}")


def _slopes(tol: Tolerances, seed: int) -> Iterator[CheckResult]:
    single = envelopes.critical_normalized_length(False, tol=tol)
    multi = envelopes.critical_normalized_length(True, tol=tol)
    single_bound = counting.exceptional_count_bound(False, tol)
    multi_bound = counting.exceptional_count_bound(True, tol)
    max_delta = counting.delta_max(False, tol)
    yield CheckResult(
        "slopes",
        "count_bounds",
        (single_bound, multi_bound) == (60, 114),
        f"{single_bound} / {multi_bound}",
    )

    shapes = [CuspShape.from_tau(0.0, 1.0), CuspShape.from_tau(0.5, math.sqrt(3) / 2)]
    shapes += lattice.random_shapes(RANDOM_SHAPE_COUNT, seed)
    worst_count = worst_multi = worst_delta = 0
    inequality = True
    for shape in shapes:
        report = counting.verify_length_intersection_inequality(shape, single)
        worst_count = max(worst_count, report.count)
        worst_delta = max(worst_delta, report.max_delta)
        inequality = inequality and report.holds
        worst_multi = max(
            worst_multi, len(lattice.enumerate_short_slopes(shape, multi))
        )
    yield CheckResult(
        "slopes",
        "single_cusp_count",
        worst_count <= single_bound and worst_delta <= max_delta,
        f"max count {worst_count}, max delta {worst_delta} (seed {seed})",
    )
    yield CheckResult(
        "slopes",
        "multi_cusp_count",
        worst_multi <= multi_bound,
        f"max count {worst_multi} (seed {seed})",
    )
    yield CheckResult("slopes", "length_intersection", inequality)


def _guarded(
    group: str, checks: Callable[[], Iterator[CheckResult]]
) -> list[CheckResult]:
    try:
        return list(checks())
    except (BoundsError, ValueError) as e:
        logger.warning("Check group %s raised: %s", group, e)
        return [CheckResult(group, "evaluation", False, str(e))]


def run_checks(
    tol: Tolerances = DEFAULT_TOLERANCES, seed: int = 20240101
) -> list[CheckResult]:
    """Run the invariant suite.

    Args:
        tol: Numerical tolerances
        seed: Seed for the random cusp shapes

    Returns:
        Results in group order: constants, identities, envelope, volume,
        packing, slopes
    """
    results: list[CheckResult] = []
    results += _guarded("constants", lambda: _constants(tol))
    results += _guarded("identities", lambda: _identities(tol))
    results += _guarded("envelope", lambda: _envelope(tol))
    results += _guarded("volume", lambda: _volume(tol))
    results += _guarded("packing", lambda: _packing(tol))
    results += _guarded("slopes", lambda: _slopes(tol, seed))
    failed = [r for r in results if not r.passed]
    logger.info("Invariant suite: %d checks, %d failed", len(results), len(failed))
    return results
