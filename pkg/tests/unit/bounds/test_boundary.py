"""Unit tests for conefill.bounds.boundary module."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conefill.bounds.boundary import (
    FormKind,
    MeridianGeometry,
    b00_upper,
    boundary_pairings,
    complex_length_derivative,
    dl_dalpha_bounds,
    flux_coefficients,
    keybound_interval,
    length_monotone_radius,
    meridian_complex_length,
    standard_form,
    x_interval,
    x_lo_factor,
    xy_admissible,
)
from conefill.bounds.envelopes import alpha_ell_monotone_threshold
from conefill.bounds.errors import DomainError

radii = st.floats(min_value=0.05, max_value=3.0)
angles = st.floats(min_value=0.1, max_value=2 * math.pi)


@pytest.mark.unit
class TestStandardForms:
    """Test the standard form coefficient matrices."""

    @pytest.mark.parametrize("kind", list(FormKind))
    @pytest.mark.parametrize("r", [0.1, 0.531, 1.0, 2.5])
    def test_symmetric_and_traceless(self, kind, r):
        """Test both forms are symmetric and traceless."""
        form = standard_form(kind, r)
        assert form.is_symmetric()
        assert form.is_traceless()
        assert form.entries.shape == (3, 3)

    def test_meridian_entries(self):
        """Test the meridian form entries at r = 1."""
        s, c = math.sinh(1.0), math.cosh(1.0)
        form = standard_form(FormKind.MERIDIAN, 1.0)
        assert form.entries[0, 0] == pytest.approx(-1 / (c * c * s * s))
        assert form.entries[1, 2] == pytest.approx(-1j / (c * s))
        assert form.entries[0, 1] == 0

    def test_longitude_entries(self):
        """Test the longitude form entries at r = 1."""
        s, c = math.sinh(1.0), math.cosh(1.0)
        form = standard_form(FormKind.LONGITUDE, 1.0)
        assert form.entries[1, 1] == -1
        assert form.entries[2, 2] == pytest.approx((c * c + 1) / (c * c))
        assert form.entries[2, 1] == pytest.approx(-1j * s / c)

    def test_invalid_radius(self):
        """Test r = 0 is rejected."""
        with pytest.raises(DomainError):
            standard_form(FormKind.MERIDIAN, 0.0)


@pytest.mark.unit
class TestFluxCoefficients:
    """Test the boundary quadratic."""

    def test_signs(self):
        """Test a < 0 < b, c."""
        coeffs = flux_coefficients(0.8, 2 * math.pi)
        assert coeffs.a < 0 < coeffs.b
        assert coeffs.c > 0

    @given(radii, angles)
    def test_discriminant(self, R, alpha):
        """Test 4ac - b^2 = -tanh^2 R / m^4."""
        coeffs = flux_coefficients(R, alpha)
        m = alpha * math.sinh(R)
        expected = math.tanh(R) ** 2 / m**4
        four_ac_minus_b2 = 4 * coeffs.a * coeffs.c - coeffs.b**2
        assert four_ac_minus_b2 == pytest.approx(-expected, rel=1e-12)
        assert coeffs.discriminant == pytest.approx(expected, rel=1e-12)

    @given(radii, angles)
    def test_maximum_is_b00_upper(self, R, alpha):
        """Test (4ac - b^2)/(4a) equals the closed-form upper bound."""
        coeffs = flux_coefficients(R, alpha)
        m = alpha * math.sinh(R)
        assert coeffs.maximum == pytest.approx(b00_upper(R, m), rel=1e-12)

    @given(radii, angles)
    def test_pairings_assemble(self, R, alpha):
        """Test the pairings reproduce the closed-form coefficients."""
        assembled = boundary_pairings(R).assemble(alpha)
        direct = flux_coefficients(R, alpha)
        assert assembled.a == pytest.approx(direct.a, rel=1e-12)
        assert assembled.b == pytest.approx(direct.b, rel=1e-12)
        assert assembled.c == pytest.approx(direct.c, rel=1e-12)

    def test_pairing_signs(self):
        """Test the meridian pairing is positive and the longitude one negative."""
        pairings = boundary_pairings(1.0)
        assert pairings.bmm > 0 > pairings.bll
        s, c = math.sinh(1.0), math.cosh(1.0)
        assert pairings.bml + pairings.blm == pytest.approx(-2 / (s * c**3))

    def test_value(self):
        """Test the quadratic evaluates as a(x^2 + y^2) + bx + c."""
        coeffs = flux_coefficients(1.0, 1.0)
        x, y = 0.01, -0.02
        expected = coeffs.a * (x * x + y * y) + coeffs.b * x + coeffs.c
        assert coeffs.value(x, y) == expected

    @pytest.mark.parametrize(("R", "alpha"), [(0.0, 1.0), (1.0, 0.0), (1.0, 7.0)])
    def test_invalid(self, R, alpha):
        """Test invalid radius or cone angle."""
        with pytest.raises(DomainError):
            flux_coefficients(R, alpha)


@pytest.mark.unit
class TestXInterval:
    """Test the admissible range of the longitude coefficient."""

    @given(radii, angles)
    def test_endpoints_are_roots(self, R, alpha):
        """Test x_lo and x_hi are the roots of a x^2 + b x + c."""
        coeffs = flux_coefficients(R, alpha)
        interval = x_interval(R, alpha)
        assert abs(coeffs.value(interval.x_lo, 0.0)) <= 1e-9 * coeffs.c
        assert abs(coeffs.value(interval.x_hi, 0.0)) <= 1e-9 * coeffs.c

    def test_center_and_radius(self):
        """Test center = -b/(2a) and radius^2 = (b^2 - 4ac)/(4a^2)."""
        coeffs = flux_coefficients(0.9, 3.0)
        interval = x_interval(0.9, 3.0)
        assert interval.center == pytest.approx(-coeffs.b / (2 * coeffs.a))
        assert interval.radius**2 == pytest.approx(
            coeffs.discriminant / (4 * coeffs.a**2)
        )

    def test_x_hi(self):
        """Test x_hi = 1/(4 m^2)."""
        m = 2 * math.pi * math.sinh(1.0)
        assert x_interval(1.0, 2 * math.pi).x_hi == pytest.approx(1 / (4 * m * m))

    def test_factor_limits(self):
        """Test the x_lo factor rises from 1/3 towards 1."""
        assert x_lo_factor(1e-8) == pytest.approx(1 / 3)
        assert x_lo_factor(0.5) < x_lo_factor(1.0) < x_lo_factor(5.0) < 1
        c2 = math.cosh(1.0) ** 2
        assert x_lo_factor(1.0) == pytest.approx((2 * c2 - 1) / (2 * c2 + 1))

    def test_xy_admissible(self):
        """Test the admissible disk in the (x, y) plane."""
        R, alpha = 0.8, 2.0
        m = alpha * math.sinh(R)
        interval = x_interval(R, alpha)
        assert xy_admissible(interval.center, 0.0, R, m)
        assert xy_admissible(interval.x_hi, 0.0, R, m)
        assert xy_admissible(interval.center, 0.99 * interval.radius, R, m)
        assert not xy_admissible(interval.x_hi * 1.01, 0.0, R, m)
        assert not xy_admissible(interval.center, 1.01 * interval.radius, R, m)

    def test_sampled_disk_has_non_negative_flux(self):
        """Test admissible points make the boundary quadratic non-negative."""
        R, alpha = 1.2, 5.0
        m = alpha * math.sinh(R)
        coeffs = flux_coefficients(R, alpha)
        interval = x_interval(R, alpha)
        rng = np.random.default_rng(7)
        for _ in range(200):
            x = rng.uniform(interval.x_lo, interval.x_hi) * 1.2
            y = rng.uniform(-1.2, 1.2) * interval.radius
            if xy_admissible(x, y, R, m, rtol=0.0):
                assert coeffs.value(x, y) >= -1e-12 * coeffs.c


@pytest.mark.unit
class TestLengthDerivative:
    """Test the bounds on d ell / d alpha."""

    def test_keybound_at_monotone_radius(self):
        """Test the lower end is -1 where sinh R = 1/sqrt 2."""
        key = keybound_interval(length_monotone_radius())
        assert key.lo == pytest.approx(-1.0, rel=1e-14)
        assert key.hi == pytest.approx(2.0, rel=1e-14)

    def test_length_monotone_radius(self):
        """Test arcsinh(1/sqrt 2) is about 0.65848."""
        assert length_monotone_radius() == pytest.approx(0.65848, abs=1e-5)

    def test_dl_dalpha_sign_change(self):
        """Test the lower bound changes sign at arcsinh(1/sqrt 2)."""
        r0 = length_monotone_radius()
        assert abs(dl_dalpha_bounds(0.1, 1.0, r0).lo) < 1e-14
        assert dl_dalpha_bounds(0.1, 1.0, r0 + 0.05).lo > 0
        assert dl_dalpha_bounds(0.1, 1.0, r0 - 0.05).lo < 0

    def test_alpha_ell_threshold(self):
        """Test 2 + 4 alpha^2 x_lo = 0 at the alpha*ell monotonicity radius."""
        R = float(alpha_ell_monotone_threshold())
        assert R == pytest.approx(0.4407, abs=1e-4)
        alpha = 1.7
        assert 2 + 4 * alpha**2 * x_interval(R, alpha).x_lo == pytest.approx(
            0.0, abs=1e-12
        )

    def test_dl_dalpha_scaling(self):
        """Test the bracket scales with ell/alpha."""
        one = dl_dalpha_bounds(0.1, 2.0, 1.0)
        two = dl_dalpha_bounds(0.2, 2.0, 1.0)
        assert two.lo == pytest.approx(2 * one.lo)
        assert two.hi == pytest.approx(2 * one.hi)

    def test_meridian_derivative(self):
        """Test the meridian i alpha has derivative i/(2 alpha) in t."""
        alpha = 2.0
        derivative = complex_length_derivative(
            meridian_complex_length(alpha), alpha, 0.3, -0.4
        )
        assert derivative == pytest.approx(1j / (2 * alpha))

    def test_longitude_derivative(self):
        """Test a real length gets the extra 2 L (x + iy) term."""
        derivative = complex_length_derivative(complex(0.5, 0.0), 1.0, 0.1, 0.2)
        assert derivative == pytest.approx(complex(0.25 + 0.1, 0.2))

    def test_meridian_complex_length(self):
        """Test the meridian complex length is purely imaginary."""
        assert meridian_complex_length(math.pi) == complex(0.0, math.pi)
        with pytest.raises(DomainError):
            meridian_complex_length(0.0)


@pytest.mark.unit
class TestMeridianGeometry:
    """Test MeridianGeometry."""

    def test_from_cone(self):
        """Test meridian length, height and area."""
        geom = MeridianGeometry.from_cone(1.0, 2 * math.pi, ell=0.1)
        m = 2 * math.pi * math.sinh(1.0)
        assert geom.m == pytest.approx(m)
        assert geom.height == pytest.approx(0.1 * math.cosh(1.0))
        assert geom.area == pytest.approx(m * 0.1 * math.cosh(1.0))

    def test_without_length(self):
        """Test the core length is optional."""
        geom = MeridianGeometry.from_cone(0.5, 1.0)
        assert geom.ell is None
        assert geom.area is None

    def test_invalid_length(self):
        """Test a non-positive core length is rejected."""
        with pytest.raises(DomainError):
            MeridianGeometry.from_cone(0.5, 1.0, ell=0.0)
