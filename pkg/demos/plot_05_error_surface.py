"""
Which computation errors can be tolerated?
==========================================

For fixed squeezing the error probability is a surface over the computation
error (a, b). Its one-in-a-million level set bounds the usable gates.
"""

import numpy as np

from gkpthreshold import sweep_error_surface, variance_from_db

a = np.linspace(0, 2.2, 12)
b = np.linspace(0, 6, 61)
levels = (-18, -19, -20)
sweep = sweep_error_surface(a, b, [variance_from_db(d) for d in levels])

# More squeezing pushes the contour outward.
print("   a   " + "  ".join(f"{d} dB" for d in levels))
for i, ai in enumerate(a):
    print(f"{ai:5.2f}  " + "  ".join(f"{c[i]:6.3f}" for c in sweep.contours))

for d, k in zip(levels, range(3)):
    print(f"area under the {d} dB contour: {sweep.contour_area(k):.3f}")
