"""
Finite GKP codewords
====================

A realistic GKP word is a comb of Gaussian peaks under a Gaussian envelope.
"""

import numpy as np

from gkpthreshold import GkpParams, gkp_density
from gkpthreshold.gkp import SQRT_PI, correctable_range, modular_decode

p = GkpParams(delta_peak=1e-2)
# the envelope is 1/ae = 10 wide, so the grid has to reach far out
x = np.arange(-80, 80, 0.025)
zero = gkp_density(p, "zero", x)
one = gkp_density(p, "one", x)

# Peaks of |0> sit at even multiples of sqrt(pi), peaks of |1> at odd ones.
for name, d in (("zero", zero), ("one", one)):
    near = np.abs(x) < 8
    xs, ds = x[near], d[near]
    top = (ds[1:-1] > ds[:-2]) & (ds[1:-1] > ds[2:])
    print(name, np.round(xs[1:-1][top] / SQRT_PI, 2), "x sqrt(pi)")

print("normalisation:", np.trapezoid(zero, x), np.trapezoid(one, x))

# Any shift smaller than half a spacing is undone by the decoder.
r = correctable_range(p)
print(f"\ncorrectable half widths: x {r.x_half_width:.4f}, y {r.y_half_width:.4f}")
for shift in (0.3, 0.8, 0.9):
    print(f"shift {shift}: decoded residual {modular_decode(4 * SQRT_PI + shift):+.4f}")
