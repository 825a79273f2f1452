import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from gkpthreshold.gkp import (
    SQRT_PI,
    GkpParams,
    admissible_gains,
    comb_truncation,
    correctable_range,
    gkp_density,
    modular_decode,
)


def decode_brute_force(x, alpha, reach=50):
    """Centered representative found by scanning integer shifts."""
    best = None
    for n in range(-reach, reach + 1):
        r = x - n * alpha
        if -alpha / 2 <= r < alpha / 2:
            assert best is None
            best = r
    return best


class TestCorrectableRange:
    def test_sqrt_pi_equal(self):
        r = correctable_range(GkpParams())
        assert r.x_half_width == pytest.approx(SQRT_PI / 2, rel=1e-15)
        assert r.y_half_width == pytest.approx(SQRT_PI / 2, rel=1e-15)

    def test_double_spacing(self):
        r = correctable_range(GkpParams(alpha=2 * SQRT_PI))
        assert r.x_half_width == pytest.approx(SQRT_PI, rel=1e-15)
        assert r.y_half_width == pytest.approx(SQRT_PI / 4, rel=1e-15)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 3.0])
    def test_product(self, alpha):
        assert correctable_range(alpha).product == pytest.approx(math.pi / 4, rel=1e-15)

    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_product_any_alpha(self, alpha):
        assert correctable_range(alpha).product == pytest.approx(math.pi / 4, rel=1e-14)


class TestAdmissibleGains:
    def test_equal_spacing(self):
        assert admissible_gains(SQRT_PI, SQRT_PI) == {1, -1}
        assert admissible_gains(1.0, 1.0) == {1, -1}

    def test_mismatched_spacing(self):
        assert admissible_gains(SQRT_PI, 2 * SQRT_PI) == set()
        # counterexample n' = 1: alpha mod beta != 0
        assert math.fmod(SQRT_PI, 2 * SQRT_PI) != 0

    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_always_plus_minus_one(self, alpha):
        assert admissible_gains(alpha, alpha) == {1, -1}

    def test_gains_cancel_comb(self):
        rng = np.random.default_rng(5)
        n, m = rng.integers(-100, 101, size=(2, 1000))
        for g in admissible_gains(SQRT_PI, SQRT_PI):
            assert np.allclose(modular_decode(SQRT_PI * (n + m * g), SQRT_PI), 0, atol=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            admissible_gains(0.0, 1.0)


class TestModularDecode:
    def test_integer_shift(self):
        assert modular_decode(2 * SQRT_PI + 0.1, SQRT_PI) == pytest.approx(0.1, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.3, 1.0, SQRT_PI, 7.0])
    def test_zero(self, alpha):
        assert modular_decode(0.0, alpha) == 0.0

    def test_wraps_past_half(self):
        x = 0.95 * SQRT_PI
        got = modular_decode(x, SQRT_PI)
        assert got == pytest.approx(decode_brute_force(x, SQRT_PI), abs=1e-15)
        assert got == pytest.approx(-0.05 * SQRT_PI, abs=1e-12)

    def test_half_open_convention(self):
        assert modular_decode(0.5, 1.0) == -0.5
        assert modular_decode(-0.5, 1.0) == -0.5

    @given(st.floats(min_value=-100, max_value=100), st.floats(min_value=0.1, max_value=10))
    def test_matches_brute_force(self, x, alpha):
        expected = decode_brute_force(x, alpha, reach=int(100 / alpha) + 2)
        assert modular_decode(x, alpha) == pytest.approx(expected, abs=1e-12)

    @given(st.floats(min_value=-10, max_value=10), st.integers(-10**6, 10**6))
    def test_periodic(self, x, n):
        a = modular_decode(x, SQRT_PI)
        b = modular_decode(x + n * SQRT_PI, SQRT_PI)
        # |x + n alpha| ~ 1.8e6 carries ~2e-10 of rounding
        d = abs(a - b)
        assert min(d, SQRT_PI - d) < 1e-9

    @given(st.floats(min_value=-1e6, max_value=1e6))
    def test_range(self, x):
        r = modular_decode(x, SQRT_PI)
        assert -SQRT_PI / 2 <= r < SQRT_PI / 2

    def test_vectorised(self):
        x = np.array([0.0, 0.1, SQRT_PI, -0.6 * SQRT_PI])
        out = modular_decode(x, SQRT_PI)
        assert out.shape == x.shape
        assert out[2] == pytest.approx(0.0, abs=1e-15)
        assert out[3] == pytest.approx(0.4 * SQRT_PI, abs=1e-15)


def wide_grid(p, per_width=4.0):
    half = 8.0 / p.envelope_ae + 1.0
    step = math.sqrt(p.delta_peak) / per_width
    return np.arange(-half, half + step / 2, step)


class TestDensity:
    def test_zero_peaks_at_even_multiples(self):
        p = GkpParams(delta_peak=1e-2)
        x = np.linspace(-6, 6, 12001)
        d = gkp_density(p, "zero", x)
        interior = (d[1:-1] > d[:-2]) & (d[1:-1] > d[2:]) & (d[1:-1] > 1e-3 * d.max())
        maxima = x[1:-1][interior]
        assert np.allclose(maxima, [-2 * SQRT_PI, 0, 2 * SQRT_PI], atol=2e-3)

    def test_one_peaks_at_odd_multiples(self):
        p = GkpParams(delta_peak=1e-2)
        x = np.linspace(-6, 6, 12001)
        d = gkp_density(p, "one", x)
        interior = (d[1:-1] > d[:-2]) & (d[1:-1] > d[2:]) & (d[1:-1] > 1e-3 * d.max())
        maxima = x[1:-1][interior]
        assert np.allclose(maxima, [-3 * SQRT_PI, -SQRT_PI, SQRT_PI, 3 * SQRT_PI], atol=2e-3)

    def test_zero_is_even(self):
        p = GkpParams(delta_peak=0.03, envelope_ae=0.2)
        x = np.linspace(-40, 40, 8001)
        d = gkp_density(p, "zero", x)
        assert np.max(np.abs(d - d[::-1])) < 1e-12

    @pytest.mark.parametrize("delta", [1e-3, 1e-2, 0.1])
    @pytest.mark.parametrize("ae", [0.05, 0.2, 0.5])
    @pytest.mark.parametrize("word", ["zero", "one"])
    def test_normalised(self, delta, ae, word):
        p = GkpParams(delta_peak=delta, envelope_ae=ae)
        x = wide_grid(p)
        assert abs(np.trapezoid(gkp_density(p, word, x), x) - 1) < 1e-6

    def test_narrow_one_mass_near_odd_multiples(self):
        p = GkpParams(delta_peak=1e-3)
        x = wide_grid(p, per_width=20)
        d = gkp_density(p, "one", x)
        k = np.rint(x / SQRT_PI)
        near = (k % 2 == 1) & (np.abs(x - k * SQRT_PI) <= 3 * math.sqrt(p.delta_peak))
        total = integrate.trapezoid(d, x)
        inside = integrate.trapezoid(np.where(near, d, 0.0), x)
        assert inside / total > 0.99

    def test_one_is_shifted_zero_near_origin(self):
        p = GkpParams(delta_peak=1e-2, envelope_ae=0.02)
        x = np.linspace(-1.5, 1.5, 301)
        zero = gkp_density(p, "zero", x)
        one = gkp_density(p, "one", x + SQRT_PI)
        assert np.allclose(zero, one, rtol=0.02, atol=1e-6)

    def test_default_envelope(self):
        p = GkpParams(delta_peak=0.04)
        assert p.envelope_ae == pytest.approx(0.2)

    def test_truncation_drops_tiny_weight(self):
        p = GkpParams(delta_peak=0.01, envelope_ae=0.1)
        k = comb_truncation(p)
        assert math.exp(-0.5 * (p.envelope_ae * k * p.alpha) ** 2) < 1e-12

    def test_grid_validation(self):
        p = GkpParams()
        with pytest.raises(ValueError):
            gkp_density(p, "zero", [0.0, 0.0, 1.0])
        with pytest.raises(ValueError):
            gkp_density(p, "zero", [])
        with pytest.raises(ValueError):
            gkp_density(p, "two", [0.0, 1.0])

    @pytest.mark.parametrize("kw", [{"alpha": 0}, {"delta_peak": -1}, {"envelope_ae": 0.0}])
    def test_param_validation(self, kw):
        with pytest.raises(ValueError):
            GkpParams(**kw)
