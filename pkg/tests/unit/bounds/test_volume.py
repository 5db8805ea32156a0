"""Unit tests for conefill.bounds.volume module."""

import math

import numpy as np
import pytest
from scipy import integrate

from conefill.bounds.envelopes import core_length_bracket
from conefill.bounds.errors import DomainError, HumpExceededError
from conefill.bounds.scalar import Z1, get_constants
from conefill.bounds.volume import (
    _lower_integrand,
    _upper_integrand,
    delta_v_bounds,
    drilled_volume_bracket,
    dv_dalpha,
    min_volume_after_filling,
    min_volume_with_short_geodesic,
    schlafli_easy_bound,
    volume_drop_integrals,
)
from conefill.models import CUSPED_VOLUME_MIN


def lower_rational(z: float, c: float) -> float:
    """Lower integrand H'/(4H(H + G)) as a rational function."""
    return (c / 4) * 2 * z**2 * (z**4 + 4 * z**2 - 1) / (1 + z**2) ** 3


def upper_rational(z: float, c: float) -> float:
    """Upper integrand H'/(4H(H - G~)) as a rational function."""
    num = 2 * z**2 * (3 - z**2) * (z**4 + 4 * z**2 - 1)
    den = (1 + z**2) ** 2 * (6 * z**2 - z**4 - 1)
    return (c / 4) * num / den


@pytest.mark.unit
class TestVolumeDropIntegrals:
    """Test the volume-change integrals."""

    @pytest.mark.parametrize("z_hat", [Z1, 0.6, 0.9, 0.999])
    @pytest.mark.parametrize("multi", [False, True])
    def test_against_rational_forms(self, z_hat, multi):
        """Test both integrals against quadrature of the rational integrands."""
        c = get_constants().cusp_constant(multi)
        lo_expected, _ = integrate.quad(lower_rational, z_hat, 1.0, args=(c,))
        hi_expected, _ = integrate.quad(upper_rational, z_hat, 1.0, args=(c,))
        drop = volume_drop_integrals(z_hat, multi)
        assert drop.lo == pytest.approx(lo_expected, rel=1e-8)
        assert drop.hi == pytest.approx(hi_expected, rel=1e-8)

    def test_integrand_limits(self):
        """Test both rational integrands tend to C/4 at z = 1."""
        c = get_constants().c_single
        assert lower_rational(1.0, c) == pytest.approx(c / 4)
        assert upper_rational(1.0, c) == pytest.approx(c / 4)

    @pytest.mark.parametrize("multi", [False, True])
    def test_shipped_integrands_bounded(self, multi):
        """Test both integrands lie in (0, C/4] above the hump and meet C/4 at 1."""
        consts = get_constants()
        limit = consts.cusp_constant(multi) / 4
        grid = np.linspace(consts.z_at_hmax, 1.0, 400)[1:-1]
        for z in [*grid, 1 - 1e-5, 1 - 2e-6, 1 - 1e-7]:
            for integrand in (_lower_integrand, _upper_integrand):
                value = integrand(float(z), multi)
                assert 0 < value <= limit * (1 + 1e-9)
        assert _lower_integrand(1 - 2e-6, multi) == pytest.approx(limit, rel=1e-4)
        assert _upper_integrand(1 - 2e-6, multi) == pytest.approx(limit, rel=1e-4)

    def test_upper_at_z1(self):
        """Test the upper bound over [z1, 1] is about 0.3287."""
        assert volume_drop_integrals(Z1).hi == pytest.approx(0.3287, abs=1e-3)

    def test_empty_interval(self):
        """Test z_hat = 1 gives no volume change."""
        drop = volume_drop_integrals(1.0)
        assert drop.lo == drop.hi == 0.0

    def test_below_hump(self):
        """Test z_hat below the top of the hump is rejected."""
        with pytest.raises(DomainError):
            volume_drop_integrals(0.45)
        with pytest.raises(DomainError):
            volume_drop_integrals(1.01)

    def test_hump_edge_accepted(self):
        """Test the exact top of the hump is a valid lower limit."""
        z_top = get_constants().z_at_hmax
        drop = volume_drop_integrals(z_top)
        assert drop.lo <= drop.hi


@pytest.mark.unit
class TestDeltaVBounds:
    """Test delta_v_bounds."""

    def test_zero_length(self):
        """Test ell_hat = 0 is the complete structure."""
        result = delta_v_bounds(0.0)
        assert result.z_hat == 1.0
        assert result.delta_v.lo == result.delta_v.hi == 0.0
        assert result.nz_asymptote == 0.0

    def test_negative_length(self):
        """Test negative lengths are rejected."""
        with pytest.raises(DomainError):
            delta_v_bounds(-0.01)

    def test_above_hump(self):
        """Test lengths beyond h_max/(2 pi) raise HumpExceededError."""
        with pytest.raises(HumpExceededError):
            delta_v_bounds(0.17)
        with pytest.raises(HumpExceededError):
            delta_v_bounds(0.1, multi_cusp=True)

    def test_maximal_length(self):
        """Test the largest admissible length lands on the top of the hump."""
        consts = get_constants()
        result = delta_v_bounds(consts.h_max / (2 * math.pi))
        assert result.z_hat == pytest.approx(consts.z_at_hmax, abs=1e-9)
        assert result.z_hat < Z1

    @pytest.mark.parametrize("ell_hat", [1e-4, 1e-3])
    def test_short_core_asymptote(self, ell_hat):
        """Test Delta V is close to pi ell / 2 for short cores."""
        result = delta_v_bounds(ell_hat)
        assert result.nz_asymptote == math.pi * ell_hat / 2
        assert 0.95 <= result.delta_v.lo / result.nz_asymptote <= 1.05
        assert 0.95 <= result.delta_v.hi / result.nz_asymptote <= 1.05

    def test_short_core_ratio_converges(self):
        """Test Delta V lo / (pi ell / 2) climbs monotonically towards 1."""
        ratios = [
            delta_v_bounds(ell_hat).delta_v.lo / (math.pi * ell_hat / 2)
            for ell_hat in (1e-3, 1e-4, 1e-5)
        ]
        assert ratios[0] < ratios[1] < ratios[2] < 1
        assert ratios[0] > 0.998
        assert 1 - ratios[2] < 1e-4

    def test_schlafli_integral_matches_lower_bound(self):
        """Test integrating ell/2 along the upper length bound gives Delta V lo."""
        L_hat = 8.0
        nodes, weights = np.polynomial.legendre.leggauss(40)
        alphas = math.pi * (nodes + 1)
        values = [-dv_dalpha(core_length_bracket(float(a), L_hat).hi) for a in alphas]
        integral = math.pi * float(np.dot(weights, values))
        ell_hat = core_length_bracket(2 * math.pi, L_hat).hi
        drop = delta_v_bounds(ell_hat).delta_v
        assert integral == pytest.approx(drop.lo, rel=1e-6)
        assert integral <= drop.hi

    def test_z_hat_consistent(self):
        """Test 2 pi ell_hat = h(arctanh z_hat)."""
        result = delta_v_bounds(0.1)
        alpha_ell = get_constants().c_single * result.z_hat * (1 - result.z_hat**2)
        alpha_ell /= 1 + result.z_hat**2
        assert alpha_ell == pytest.approx(2 * math.pi * 0.1, rel=1e-10)

    def test_monotone_sweep(self):
        """Test both bounds grow with the core length and stay ordered."""
        results = [delta_v_bounds(float(x)) for x in np.linspace(0.001, 0.162, 30)]
        for prev, cur in zip(results, results[1:], strict=False):
            assert cur.delta_v.lo >= prev.delta_v.lo
            assert cur.delta_v.hi >= prev.delta_v.hi
        for r in results:
            assert r.delta_v.lo <= r.delta_v.hi


@pytest.mark.unit
class TestVolumeEstimates:
    """Test the derived volume estimates."""

    def test_schlafli(self):
        """Test dV/d alpha = -ell/2."""
        assert dv_dalpha(0.2) == -0.1
        with pytest.raises(DomainError):
            dv_dalpha(-1.0)

    def test_easy_bound(self):
        """Test |delta alpha| ell0 / 2."""
        assert schlafli_easy_bound(-0.5, 0.2) == pytest.approx(0.05)
        with pytest.raises(DomainError):
            schlafli_easy_bound(0.5, 0.0)

    def test_min_volume_after_filling(self):
        """Test the filled volume is at least about 1.7012."""
        assert min_volume_after_filling() == pytest.approx(1.7012, abs=2e-3)
        assert min_volume_after_filling(3.0) == pytest.approx(
            min_volume_after_filling() + 3.0 - CUSPED_VOLUME_MIN
        )

    def test_min_volume_with_short_geodesic(self):
        """Test the closed-manifold bound for shortest geodesics of length <= 0.162."""
        assert min_volume_with_short_geodesic() == pytest.approx(1.701, abs=2e-3)
        assert min_volume_with_short_geodesic(ell_max=0.05) > 1.85

    def test_drilled_volume_bracket(self):
        """Test drilling adds the Delta V bracket to the closed volume."""
        drop = delta_v_bounds(0.1).delta_v
        bracket = drilled_volume_bracket(2.0, 0.1)
        assert bracket.lo == pytest.approx(2.0 + drop.lo)
        assert bracket.hi == pytest.approx(2.0 + drop.hi)

    def test_drilled_volume_invalid(self):
        """Test a non-positive volume is rejected."""
        with pytest.raises(DomainError):
            drilled_volume_bracket(0.0, 0.1)
