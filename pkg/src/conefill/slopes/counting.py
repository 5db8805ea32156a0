"""Intersection numbers and the exceptional-slope count.

Two slopes of normalized lengths L1, L2 meet at most L1 * L2 times, so slopes
below the filling threshold pairwise intersect fewer than threshold^2 times.
A set of slopes with pairwise intersection at most p - 1, p prime, has at
most p + 1 members; that counting result is imported, not rederived.
"""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from conefill.bounds.envelopes import critical_normalized_length
from conefill.bounds.numerics import DEFAULT_TOLERANCES, Tolerances
from conefill.slopes.lattice import enumerate_short_slopes, normalized_length
from conefill.slopes.models import CuspShape, Slope

logger = logging.getLogger(__name__)

# Slack for L1 * L2 >= Delta in floating point
RATIO_RTOL = 1e-12


def intersection_number(s1: Slope, s2: Slope) -> int:
    """Geometric intersection number |p1*q2 - p2*q1| of two slopes."""
    return abs(s1.p * s2.q - s2.p * s1.q)


def _is_prime(n: int) -> bool:
    if n < 2:  # noqa: PLR2004
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def delta_max(multi_cusp: bool = False, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Largest intersection number allowed between two slopes below the threshold.

    Returns the largest integer strictly below threshold^2: 56 for one cusp,
    112 for several.
    """
    squared = critical_normalized_length(multi_cusp, tol=tol) ** 2
    return math.ceil(squared) - 1


def controlling_prime(max_delta: int) -> int:
    """Smallest prime strictly greater than max_delta."""
    if max_delta < 0:
        raise ValueError(f"Intersection bound must be non-negative, got {max_delta}")
    return next(n for n in itertools.count(max_delta + 1) if _is_prime(n))


def exceptional_count_bound(
    multi_cusp: bool = False, tol: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """Universal bound on the number of slopes below the filling threshold.

    60 for a single cusp and 114 per cusp when several cusps share the packing.
    """
    prime = controlling_prime(delta_max(multi_cusp, tol))
    logger.debug("Controlling prime %d (multi_cusp=%s)", prime, multi_cusp)
    return prime + 1


@dataclass(frozen=True)
class IntersectionReport:
    """Pairwise intersection statistics of the slopes below a bound."""

    bound: float
    slopes: tuple[Slope, ...]
    lengths: tuple[float, ...]
    max_delta: int
    min_ratio: float  # min of L1 * L2 / Delta over pairs with Delta > 0; inf if none

    @property
    def count(self) -> int:
        """Number of slopes below the bound."""
        return len(self.slopes)

    @property
    def holds(self) -> bool:
        """Whether L1 * L2 >= Delta held on every pair."""
        return self.min_ratio >= 1.0 - RATIO_RTOL


def verify_length_intersection_inequality(
    shape: CuspShape, bound: float
) -> IntersectionReport:
    """Check L1 * L2 >= Delta on all pairs of slopes below bound.

    Args:
        shape: Cusp shape
        bound: Positive normalized length bound

    Returns:
        IntersectionReport for the enumerated slopes
    """
    slopes = enumerate_short_slopes(shape, bound)
    lengths = np.array([normalized_length(s, shape) for s in slopes])
    max_delta = 0
    min_ratio = math.inf

    if len(slopes) >= 2:  # noqa: PLR2004
        pq = np.array([(s.p, s.q) for s in slopes], dtype=np.int64)
        deltas = np.abs(np.outer(pq[:, 0], pq[:, 1]) - np.outer(pq[:, 1], pq[:, 0]))
        products = np.outer(lengths, lengths)
        meeting = deltas > 0
        max_delta = int(deltas.max())
        min_ratio = float((products[meeting] / deltas[meeting]).min())

    report = IntersectionReport(
        bound=bound,
        slopes=tuple(slopes),
        lengths=tuple(float(x) for x in lengths),
        max_delta=max_delta,
        min_ratio=min_ratio,
    )
    if not report.holds:
        logger.warning(
            "Length-intersection inequality failed: min ratio %.17g", min_ratio
        )
    return report
