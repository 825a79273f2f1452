"""
Squeezing thresholds of corrected gates
=======================================

How much squeezing does a GKP-corrected gate need before its error
probability drops to one in a million?
"""

import numpy as np

from gkpthreshold import CZ, SingleMode, solve_threshold
from gkpthreshold.core import db_from_variance

# A single-mode gate built from a two-node cluster plus a phase shift leaves
# a computation error of (2, 2) in units of the squeezed variance v.
single = solve_threshold(SingleMode(2, 2), 1e-6)
print(f"single-mode gate: v* = {single.variance_threshold:.4e}  ({single.db_threshold:.2f} dB)")

# A CZ corrects two modes; it fails if either of them does.
cz = solve_threshold(CZ(), 1e-6)
print(f"CZ gate:          v* = {cz.variance_threshold:.4e}  ({cz.db_threshold:.2f} dB)")

# Without any computation error only the correction itself contributes.
bare = solve_threshold(SingleMode(0, 0), 1e-6)
print(f"correction only:  v* = {bare.variance_threshold:.4e}  ({bare.db_threshold:.2f} dB)")

# The threshold moves smoothly with the target error rate.
print("\ntarget    dB")
for target in np.logspace(-12, -2, 6):
    r = solve_threshold(SingleMode(2, 2), target)
    print(f"{target:7.0e}  {r.db_threshold:7.2f}")

# dB and linear variance are related by 10 log10(2 v); vacuum is 0 dB.
print(f"\nvacuum: {db_from_variance(0.5):.1f} dB")
