"""Lattice geometry of a cusp torus.

Slopes below a length bound are enumerated in a Gauss-reduced basis. For a
lattice vector w = a*b1 + b*b2 the coordinates satisfy

    |a| <= |w| |b2| / area,    |b| <= |w| |b1| / area

(the dual basis norms), so scanning that box is complete for any basis; the
reduction only keeps the box small for skew shapes.
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from conefill.slopes.models import CuspShape, Slope

logger = logging.getLogger(__name__)

IntMatrix = npt.NDArray[np.int64]

# Gauss reduction terminates long before this on any non-degenerate basis
GAUSS_MAX_ITERATIONS = 100_000


def normalized_length(slope: Slope, shape: CuspShape) -> float:
    """Flat length of the slope divided by the square root of the torus area."""
    return math.hypot(*shape.vector(slope)) / math.sqrt(shape.area)


def reduce_basis(shape: CuspShape) -> tuple[npt.NDArray[np.float64], IntMatrix]:
    """Gauss-reduce the cusp lattice.

    Args:
        shape: Cusp shape

    Returns:
        (basis, transform) where basis rows b1, b2 satisfy |b1| <= |b2| and
        basis = transform @ shape.matrix with transform unimodular

    Raises:
        RuntimeError: If the reduction does not terminate
    """
    basis = shape.matrix
    hu = np.array([1, 0], dtype=np.int64)
    hv = np.array([0, 1], dtype=np.int64)
    u = hu @ basis
    v = hv @ basis
    if np.dot(u, u) > np.dot(v, v):
        hu, hv = hv, hu
        u, v = v, u

    for _ in range(GAUSS_MAX_ITERATIONS):
        x = round(float(np.dot(u, v) / np.dot(u, u)))
        hu, hv = hv - x * hu, hu
        u = hu @ basis
        v = hv @ basis
        if np.dot(u, u) >= np.dot(v, v):
            transform = np.array([hv, hu], dtype=np.int64)
            return transform @ basis, transform

    raise RuntimeError(
        f"Gauss reduction did not finish after {GAUSS_MAX_ITERATIONS} iterations"
    )


def enumerate_short_slopes(shape: CuspShape, bound: float) -> list[Slope]:
    """All slopes with normalized length strictly below bound.

    Args:
        shape: Cusp shape
        bound: Positive normalized length bound

    Returns:
        Canonical slopes, sorted lexicographically by (p, q)

    Raises:
        ValueError: If bound is not positive and finite
    """
    if not (math.isfinite(bound) and bound > 0.0):
        raise ValueError(f"Length bound must be positive, got {bound!r}")

    reduced, transform = reduce_basis(shape)
    area = shape.area
    max_length = bound * math.sqrt(area)
    # One extra layer absorbs rounding in the box edges
    a_max = math.floor(max_length * float(np.linalg.norm(reduced[1])) / area) + 1
    b_max = math.floor(max_length * float(np.linalg.norm(reduced[0])) / area) + 1

    a, b = np.meshgrid(
        np.arange(-a_max, a_max + 1, dtype=np.int64),
        np.arange(-b_max, b_max + 1, dtype=np.int64),
        indexing="ij",
    )
    coeffs = np.stack([a.ravel(), b.ravel()], axis=1)
    pq = coeffs @ transform
    primitive = np.gcd(pq[:, 0], pq[:, 1]) == 1
    pq = pq[primitive]

    vectors = pq.astype(np.float64) @ shape.matrix
    lengths = np.hypot(vectors[:, 0], vectors[:, 1]) / math.sqrt(area)
    found = {Slope(int(p), int(q)) for p, q in pq[lengths < bound]}
    # Lengths were vectorised; keep the scalar definition authoritative at the edge
    slopes = sorted(s for s in found if normalized_length(s, shape) < bound)
    logger.debug(
        "Enumerated %d slopes below %.17g (box %d x %d)",
        len(slopes),
        bound,
        2 * a_max + 1,
        2 * b_max + 1,
    )
    return slopes


def random_shapes(n: int, seed: int) -> list[CuspShape]:
    """Sample n shapes with modulus tau in the modular fundamental domain.

    Re tau is uniform in [-1/2, 1/2] and Im tau uniform in
    [sqrt(1 - Re^2 tau), 4], so |tau| >= 1.
    """
    if n < 0:
        raise ValueError(f"Sample count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    shapes = []
    for _ in range(n):
        re = float(rng.uniform(-0.5, 0.5))
        im = float(rng.uniform(math.sqrt(1.0 - re * re), 4.0))
        shapes.append(CuspShape.from_tau(re, im))
    return shapes
