"""
Following the noise through one correction
==========================================

Every stage of the x-then-y correction adds a known multiple of the squeezed
variance. The coefficients live in Q(sqrt 5), so the bookkeeping is exact.
"""

from gkpthreshold import SQRT5, VarianceVector, run_single_mode_ledger, sum_noise_vectors

# The optical SUM at unit gain adds this much noise to its two modes.
control, target = sum_noise_vectors()
print("SUM noise on the control:", control)
print("SUM noise on the target: ", target)

trace = run_single_mode_ledger(VarianceVector(2, 2))
for name, vec in trace.stages().items():
    x, y = vec.to_floats()
    print(f"{name:>16}: ({x:.4f}, {y:.4f})   exact {vec}")

# The variances seen by the two syndrome measurements.
print("\nsigma_x^2 / v =", trace.sigma_x_squared, "=", (2 + (SQRT5 + 1) / 2))
print("sigma_y^2 / v =", trace.sigma_y_squared)

# What is left after correction does not remember the input error.
for a, b in [(0, 0), (2, 2), (5, 1)]:
    print(f"input ({a}, {b}) -> final {run_single_mode_ledger(VarianceVector(a, b)).final}")
