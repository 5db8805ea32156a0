"""Unit tests for conefill.slopes.lattice module."""

import math

import numpy as np
import pytest

from conefill.slopes.lattice import (
    enumerate_short_slopes,
    normalized_length,
    random_shapes,
    reduce_basis,
)
from conefill.slopes.models import CuspShape, Slope

SQUARE = CuspShape(v1=(1.0, 0.0), v2=(0.0, 1.0))
HEXAGONAL = CuspShape(v1=(1.0, 0.0), v2=(0.5, math.sqrt(3) / 2))
SKEW = CuspShape(v1=(1.0, 0.0), v2=(7.3, 0.5))


def brute_force(shape: CuspShape, bound: float, box: int) -> list[Slope]:
    """Scan every primitive pair with |p|, |q| <= box."""
    found = set()
    for p in range(-box, box + 1):
        for q in range(-box, box + 1):
            if math.gcd(p, q) != 1:
                continue
            x = p * shape.v1[0] + q * shape.v2[0]
            y = p * shape.v1[1] + q * shape.v2[1]
            if math.hypot(x, y) / math.sqrt(shape.area) < bound:
                found.add(Slope(p, q))
    return sorted(found)


@pytest.mark.unit
class TestNormalizedLength:
    """Test normalized_length."""

    def test_square_torus(self):
        """Test unit and Pythagorean slopes on the square torus."""
        assert normalized_length(Slope(1, 0), SQUARE) == 1.0
        assert normalized_length(Slope(3, 4), SQUARE) == pytest.approx(5.0)

    def test_hexagonal_torus(self):
        """Test slope (1, -1) on the hexagonal torus against vector arithmetic."""
        expected = math.hypot(0.5, -math.sqrt(3) / 2) / math.sqrt(math.sqrt(3) / 2)
        value = normalized_length(Slope(1, -1), HEXAGONAL)
        assert value == pytest.approx(expected, rel=1e-14)
        assert value == pytest.approx(1.07457, abs=1e-5)

    @pytest.mark.parametrize("factor", [0.5, 2.0, 10.0])
    def test_scaling_invariance(self, factor):
        """Test rescaling the basis leaves normalized lengths unchanged."""
        for slope in (Slope(1, 0), Slope(2, 3), Slope(-5, 1)):
            assert normalized_length(slope, SKEW.scaled(factor)) == pytest.approx(
                normalized_length(slope, SKEW), rel=1e-13
            )

    def test_unimodular_invariance(self):
        """Test basis (v1, v1 + v2) reindexes (p, q) to (p + q, q)."""
        sheared = CuspShape(v1=(1.0, 0.0), v2=(1.0, 1.0))
        for p, q in [(1, 0), (0, 1), (2, 3), (-4, 1)]:
            assert normalized_length(Slope(p, q), sheared) == pytest.approx(
                normalized_length(Slope(p + q, q), SQUARE), rel=1e-14
            )


@pytest.mark.unit
class TestReduceBasis:
    """Test reduce_basis."""

    @pytest.mark.parametrize("shape", [SQUARE, HEXAGONAL, SKEW])
    def test_reduced(self, shape):
        """Test the reduced basis is short, nearly orthogonal and unimodular."""
        basis, transform = reduce_basis(shape)
        assert abs(round(np.linalg.det(transform))) == 1
        np.testing.assert_allclose(basis, transform @ shape.matrix, atol=1e-12)
        b1, b2 = basis
        assert np.dot(b1, b1) <= np.dot(b2, b2) + 1e-12
        assert abs(np.dot(b1, b2)) <= np.dot(b1, b1) / 2 + 1e-12

    def test_skew_shortest_vector(self):
        """Test the skew basis reduces to (0.3, 0.5) and (0.7, -0.5) up to sign."""
        basis, _ = reduce_basis(SKEW)
        assert np.linalg.norm(basis[0]) == pytest.approx(math.hypot(0.3, 0.5))
        assert np.linalg.norm(basis[1]) == pytest.approx(math.hypot(0.7, 0.5))


@pytest.mark.unit
class TestEnumerateShortSlopes:
    """Test enumerate_short_slopes."""

    def test_square_threshold(self):
        """Test the square torus below 7.515 against a scan of |p|, |q| <= 8."""
        slopes = enumerate_short_slopes(SQUARE, 7.515)
        assert slopes == brute_force(SQUARE, 7.515, 8)
        assert all(s.p**2 + s.q**2 < 56.4696 for s in slopes)

    def test_strict_bound(self):
        """Test slopes of length exactly 1 are excluded by bound 1."""
        assert enumerate_short_slopes(SQUARE, 1.0) == []
        assert enumerate_short_slopes(SQUARE, 1.0 + 1e-9) == [Slope(0, 1), Slope(1, 0)]

    @pytest.mark.parametrize("shape", [SQUARE, HEXAGONAL, SKEW])
    @pytest.mark.parametrize("bound", [2.5, 7.515, 10.6273])
    def test_matches_brute_force(self, shape, bound):
        """Test completeness against a generous box scan."""
        assert enumerate_short_slopes(shape, bound) == brute_force(shape, bound, 160)

    def test_basis_change_preserves_count(self):
        """Test the count is a lattice invariant."""
        sheared = CuspShape(v1=(1.0, 0.0), v2=(1.0, 1.0))
        assert len(enumerate_short_slopes(sheared, 7.515)) == len(
            enumerate_short_slopes(SQUARE, 7.515)
        )

    def test_sorted_and_canonical(self):
        """Test output is lexicographically sorted canonical slopes."""
        slopes = enumerate_short_slopes(HEXAGONAL, 5.0)
        assert slopes == sorted(slopes)
        assert all(s.q > 0 or (s.q == 0 and s.p > 0) for s in slopes)
        assert len(set(slopes)) == len(slopes)

    @pytest.mark.parametrize("bound", [0.0, -1.0, math.nan])
    def test_invalid_bound(self, bound):
        """Test the bound must be positive."""
        with pytest.raises(ValueError, match="must be positive"):
            enumerate_short_slopes(SQUARE, bound)


@pytest.mark.unit
class TestRandomShapes:
    """Test random_shapes."""

    def test_fundamental_domain(self):
        """Test moduli lie in the modular fundamental domain."""
        for shape in random_shapes(50, seed=5):
            re, im = shape.v2
            assert shape.v1 == (1.0, 0.0)
            assert -0.5 <= re <= 0.5
            assert re * re + im * im >= 1 - 1e-12
            assert im <= 4

    def test_seeded(self):
        """Test the same seed gives the same shapes."""
        assert random_shapes(5, seed=1) == random_shapes(5, seed=1)
        assert random_shapes(5, seed=1) != random_shapes(5, seed=2)

    def test_negative_count(self):
        """Test a negative count is rejected."""
        with pytest.raises(ValueError, match="non-negative"):
            random_shapes(-1, seed=0)
