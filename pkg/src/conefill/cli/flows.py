"""Command flows: turn configuration into computed records ready for output."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from conefill.bounds.envelopes import critical_normalized_length, envelope_curve
from conefill.bounds.errors import DomainError
from conefill.bounds.numerics import Tolerances
from conefill.bounds.scalar import get_constants
from conefill.bounds.volume import delta_v_bounds
from conefill.models import EnvelopeCurve, RunConfig, VolumeChangeResult
from conefill.slopes.counting import (
    IntersectionReport,
    exceptional_count_bound,
    verify_length_intersection_inequality,
)
from conefill.slopes.models import CuspShape

logger = logging.getLogger(__name__)

ENVELOPE_COLUMNS = (
    "alpha",
    "t",
    "z_lo",
    "z_hi",
    "rho_lo",
    "ell_lo",
    "ell_hi",
    "V_drop_lo",
    "V_drop_hi",
)
VOLUME_COLUMNS = ("ell_hat", "dv_lo", "dv_hi", "nz")
SLOPE_COLUMNS = ("p", "q", "normalized_length")

Record = dict[str, float | int]


def tolerances(config: RunConfig) -> Tolerances:
    """Numerical tolerances taken from the run configuration."""
    return Tolerances(quad_abs=config.quad_tol, root=config.root_tol)


def truncation_warning(curve: EnvelopeCurve) -> str | None:
    """Message for a truncated envelope, or None when it reaches 2*pi."""
    if not curve.truncated:
        return None
    return (
        f"Envelope truncated at alpha={curve.alpha_max:.12g} "
        f"(t_max={curve.t_max:.12g}): L_hat={curve.L_hat:g} is below the "
        f"threshold {critical_normalized_length(curve.multi_cusp):.6g}"
    )


def envelope_records(curve: EnvelopeCurve) -> list[Record]:
    """One record per envelope sample, keyed by ENVELOPE_COLUMNS."""
    return [
        {
            "alpha": s.alpha,
            "t": s.t,
            "z_lo": s.z.lo,
            "z_hi": s.z.hi,
            "rho_lo": s.rho_lo,
            "ell_lo": s.ell.lo,
            "ell_hi": s.ell.hi,
            "V_drop_lo": s.v_drop.lo,
            "V_drop_hi": s.v_drop.hi,
        }
        for s in curve.samples
    ]


def run_envelope(L_hat: float, config: RunConfig) -> EnvelopeCurve:  # noqa: N803
    """Sample the envelope curve for a filling slope of normalized length L_hat."""
    logger.info(
        "Envelope for L_hat=%g (multi_cusp=%s, n=%d)",
        L_hat,
        config.multi_cusp,
        config.n_samples,
    )
    return envelope_curve(
        L_hat, config.multi_cusp, config.n_samples, tolerances(config)
    )


# Digits shown for the core-length ceiling
CEILING_DIGITS = 9


def core_length_ceiling(multi_cusp: bool = False) -> float:
    """Largest accepted core length h_max/(2*pi), rounded down for display."""
    exact = get_constants().hump_max(multi_cusp) / (2.0 * math.pi)
    scale = 10.0**CEILING_DIGITS
    return math.floor(exact * scale) / scale


def sweep_values(lo: float, hi: float, n: int) -> list[float]:
    """Evenly spaced core lengths from lo to hi inclusive.

    Raises:
        DomainError: Unless 0 < lo <= hi and n >= 1 (n = 1 needs lo == hi)
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo <= hi):
        raise DomainError(f"Sweep needs 0 < LO <= HI, got LO={lo!r}, HI={hi!r}")
    if n < 1 or (n == 1 and lo != hi):
        raise DomainError(f"Sweep from {lo!r} to {hi!r} needs N >= 2, got {n}")
    return [float(x) for x in np.linspace(lo, hi, n)]


def run_volume(values: list[float], config: RunConfig) -> list[VolumeChangeResult]:
    """Bound the volume change for each core length.

    Raises:
        DomainError: If a core length is not positive or exceeds h_max/(2*pi)
    """
    tol = tolerances(config)
    results = []
    for ell_hat in values:
        if not ell_hat > 0.0:
            raise DomainError(f"Core length must be positive, got {ell_hat!r}")
        results.append(delta_v_bounds(ell_hat, config.multi_cusp, tol))
    return results


def volume_records(results: list[VolumeChangeResult]) -> list[Record]:
    """One record per core length, keyed by VOLUME_COLUMNS."""
    return [
        {
            "ell_hat": r.ell_hat,
            "dv_lo": r.delta_v.lo,
            "dv_hi": r.delta_v.hi,
            "nz": r.nz_asymptote,
        }
        for r in results
    ]


@dataclass(frozen=True)
class SlopesSummary:
    """Slopes below a bound on one cusp shape, with the universal count bound."""

    shape: CuspShape
    report: IntersectionReport
    count_bound: int
    multi_cusp: bool

    def records(self) -> list[Record]:
        """One record per slope, keyed by SLOPE_COLUMNS."""
        return [
            {"p": s.p, "q": s.q, "normalized_length": length}
            for s, length in zip(self.report.slopes, self.report.lengths, strict=True)
        ]


def run_slopes(
    shape_path: Path, bound: float | None, config: RunConfig
) -> SlopesSummary:
    """Enumerate slopes on the shape read from shape_path.

    Args:
        shape_path: JSON file with {"v1", "v2"} or {"tau", "scale"}
        bound: Normalized length bound (default: the filling threshold)
        config: Run configuration

    Raises:
        pydantic.ValidationError: If the shape file is invalid
    """
    tol = tolerances(config)
    shape = CuspShape.from_json_file(shape_path)
    if bound is None:
        bound = critical_normalized_length(config.multi_cusp, tol=tol)
    report = verify_length_intersection_inequality(shape, bound)
    logger.info("%d slopes below %.12g on %s", report.count, bound, shape_path)
    return SlopesSummary(
        shape=shape,
        report=report,
        count_bound=exceptional_count_bound(config.multi_cusp, tol),
        multi_cusp=config.multi_cusp,
    )
