"""
Checking the analytic probabilities by sampling
===============================================

The sampler draws every Gaussian displacement of the correction explicitly,
adds random comb offsets, decodes modulo sqrt(pi) and counts wrong teeth.
"""

import math

from gkpthreshold import McConfig, SingleMode, mc_p_corr, mc_pipeline, p_corr

# One decoder window, many noise widths.
for sigma in (0.2, 0.4, 0.6, 1.0):
    r = mc_p_corr(sigma, McConfig(samples=1_000_000, seed=1))
    print(f"sigma={sigma:.1f}  sampled {r.p_hat:.5f}  analytic {p_corr(sigma):.5f}  "
          f"({r.deviation_sigmas():.2f} sigma)")

# The full pipeline at a noisy operating point, where failures are common.
r = mc_pipeline(McConfig(samples=1_000_000, seed=2, v=0.03, gate=SingleMode(2, 2)))
print(f"\nv=0.03: {r.failure_count} failures, expected {r.samples * (1 - r.analytic_p):.1f}")

# Mean squared residual of the successful trials, in units of v. Keeping
# only successes trims the tails, so the values sit a little below the ledger.
print(f"residual variance ~ ({r.residual_x:.3f}, {r.residual_y:.3f}); "
      f"ledger says ({1 + 4 / math.sqrt(5):.3f}, {0.5 + 1.5 / math.sqrt(5):.3f})")

# At threshold, ten million trials should see about ten failures.
r = mc_pipeline(McConfig(samples=10_000_000, seed=7, v=6.27e-3, workers=4))
print(f"\nthreshold: {r.failure_count} failures, expected {r.samples * (1 - r.analytic_p):.2f}, "
      f"verdict {'pass' if r.agrees() else 'fail'}")
