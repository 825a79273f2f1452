import math

import numpy as np
import pytest

from gkpthreshold.analysis import CZ, SingleMode, p_corr, p_err_cz, p_err_single
from gkpthreshold.core import variance_from_db
from gkpthreshold.gkp import SQRT_PI
from gkpthreshold.montecarlo import (
    BLOCK_SIZE,
    McConfig,
    McResult,
    _corrected_gate,
    _stage_scales,
    block_generator,
    mc_p_corr,
    mc_pipeline,
)

ERF_ONE = 0.8427007929497149


class TestConfig:
    @pytest.mark.parametrize("samples", [0, -5, 1.5])
    def test_bad_samples(self, samples):
        with pytest.raises(ValueError):
            McConfig(samples=samples)

    def test_bad_seed(self):
        with pytest.raises(ValueError):
            McConfig(samples=1, seed=2**64)
        with pytest.raises(ValueError):
            McConfig(samples=1, seed=-1)

    def test_bad_v(self):
        with pytest.raises(ValueError):
            McConfig(samples=1, v=0.0)

    def test_result_invariants(self):
        r = McResult(success_count=75, samples=100, analytic_p=0.8, seed=0)
        assert r.p_hat == 0.75
        assert r.std_err == pytest.approx(math.sqrt(0.75 * 0.25 / 100), rel=1e-15)
        assert r.failure_count == 25

    def test_zero_failure_verdict(self):
        # no failures seen while ~10 are expected is a 3.2 sigma event
        r = McResult(success_count=10**7, samples=10**7, analytic_p=1 - 1e-6, seed=0)
        assert r.deviation_sigmas() == pytest.approx(math.sqrt(10), rel=1e-5)
        assert r.agrees()


class TestMcPCorr:
    def test_tiny_sigma(self):
        r = mc_p_corr(1e-6, McConfig(samples=100_000, seed=1))
        assert r.p_hat == 1.0

    def test_erf_one(self):
        r = mc_p_corr(SQRT_PI / (2 * math.sqrt(2)), McConfig(samples=1_000_000, seed=3))
        assert r.analytic_p == pytest.approx(ERF_ONE, abs=1e-15)
        assert abs(r.p_hat - ERF_ONE) <= 4 * r.std_err

    def test_sigma_015(self):
        # ~0.0035 failures expected, so the empirical std_err is 0 and
        # the analytic one sets the scale
        r = mc_p_corr(0.15, McConfig(samples=1_000_000, seed=4))
        assert r.analytic_p == p_corr(0.15)
        assert r.agrees()

    def test_random_sigmas(self):
        sigmas = np.random.default_rng(2024).uniform(0.1, 2.0, 20)
        passed = 0
        for i, s in enumerate(sigmas):
            r = mc_p_corr(float(s), McConfig(samples=1_000_000, seed=100 + i))
            assert r.analytic_p == p_corr(float(s))
            passed += r.agrees()
        assert passed >= 19

    def test_domain(self):
        with pytest.raises(ValueError):
            mc_p_corr(0.0, McConfig(samples=10))

    def test_deterministic(self):
        cfg = McConfig(samples=200_000, seed=9)
        assert mc_p_corr(0.5, cfg) == mc_p_corr(0.5, cfg)

    def test_worker_count_irrelevant(self):
        n = 3 * BLOCK_SIZE + 17
        one = mc_p_corr(0.5, McConfig(samples=n, seed=9, workers=1))
        four = mc_p_corr(0.5, McConfig(samples=n, seed=9, workers=4))
        assert one.success_count == four.success_count

    def test_blocks_are_independent_streams(self):
        a = block_generator(5, 0).random(4)
        b = block_generator(5, 1).random(4)
        c = block_generator(6, 0).random(4)
        assert not np.array_equal(a, b) and not np.array_equal(a, c)


class TestPipeline:
    def test_vanishing_noise(self):
        r = mc_pipeline(McConfig(samples=200_000, seed=2, v=1e-12))
        assert r.failure_count == 0

    def test_noise_disabled_matches_p_corr(self):
        a, v, n = 2.0, 0.1, 150_000
        cfg = McConfig(samples=n, seed=21, v=v, gate=SingleMode(a, 0.0),
                       include_sum_noise=False, include_peak_jitter=False)
        pipe = mc_pipeline(cfg)
        ref = mc_p_corr(math.sqrt(a * v), McConfig(samples=n, seed=21))
        assert pipe.x_failures == ref.failure_count
        assert pipe.y_failures == 0
        assert pipe.analytic_p == pytest.approx(p_corr(math.sqrt(a * v)), rel=1e-15)

    def test_failures_are_window_exits(self):
        cfg = McConfig(samples=1, seed=0, v=0.05)
        gen = block_generator(31, 0)
        out = _corrected_gate(gen, BLOCK_SIZE, 2.0, 2.0, _stage_scales(cfg), cfg)
        half = SQRT_PI / 2

        def outside(t):
            return (t < -half) | (t >= half)

        assert np.count_nonzero(~out["ok_x"]) > 100
        assert np.array_equal(~out["ok_x"], outside(out["total_x"]))
        assert np.array_equal(~out["ok_y"], outside(out["total_y"]))

    def test_residuals_match_ledger(self):
        r = mc_pipeline(McConfig(samples=400_000, seed=5, v=1e-3))
        assert r.residual_x == pytest.approx(1 + 4 / math.sqrt(5), rel=1e-2)
        assert r.residual_y == pytest.approx(0.5 + 3 / (2 * math.sqrt(5)), rel=1e-2)

    def test_moderate_noise_agreement(self):
        v = 0.03
        r = mc_pipeline(McConfig(samples=500_000, seed=8, v=v))
        assert r.analytic_p == pytest.approx(1 - p_err_single(2, 2, v), rel=1e-15)
        assert r.agrees()

    def test_deterministic_and_worker_invariant(self):
        n = 2 * BLOCK_SIZE + 5
        base = mc_pipeline(McConfig(samples=n, seed=77, v=0.02))
        again = mc_pipeline(McConfig(samples=n, seed=77, v=0.02))
        multi = mc_pipeline(McConfig(samples=n, seed=77, v=0.02, workers=4))
        assert base == again
        assert base.to_json() == multi.to_json() | {"config": base.to_json()["config"]}

    def test_cz_moderate_noise(self):
        v = 0.03
        r = mc_pipeline(McConfig(samples=300_000, seed=12, v=v, gate=CZ()))
        assert r.analytic_p == pytest.approx(1 - p_err_cz(v), rel=1e-14)
        assert r.agrees()

    @pytest.mark.slow
    def test_cz_at_threshold(self):
        v = variance_from_db(-19.25)
        r = mc_pipeline(McConfig(samples=10_000_000, seed=13, v=v, gate=CZ(), workers=4))
        assert r.analytic_p == pytest.approx(1 - p_err_cz(v), rel=1e-14)
        assert r.agrees()
