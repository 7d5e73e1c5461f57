"""
Triangle waves and the multivariate ridge system
================================================

tri_cos and tri_sin are 1-periodic piecewise-linear stand-ins for
cos(2 pi t) and sin(2 pi t).  The multivariate system on [0,1]^d consists of
the constant plus ridge waves tri_cos(alpha . x), tri_sin(alpha . x) over all
integer frequency vectors whose first nonzero entry is positive.
"""

import numpy as np

from pltrig import basis

# the waves hit the same landmarks as their smooth counterparts
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"tri_cos({t:4.2f}) = {basis.tri_cos(t):5.2f}   "
          f"tri_sin({t:4.2f}) = {basis.tri_sin(t):5.2f}")

# periodic extension and the quarter-period shift identity
t = np.linspace(-2, 2, 9)
print("\nperiodicity: max |f(t) - f(t+1)| =",
      np.max(np.abs(basis.tri_cos(t) - basis.tri_cos(t + 1))))
print("shift identity: max |tri_sin(t) - tri_cos(t - 1/4)| =",
      np.max(np.abs(basis.tri_sin(t) - basis.tri_cos(t - 0.25))))

# each dilate tri_cos(k t) is affine between equally spaced breakpoints
print("\nbreakpoints of tri_cos(2 t):", basis.cos_breakpoints(2))
print("breakpoints of tri_sin(1 t):", basis.sin_breakpoints(1))

# ridge members evaluate through a single inner product
f = basis.cos_ridge((1, -2, 3))
x = np.array([0.2, 0.4, 0.6])
print("\ntri_cos((1,-2,3) . x) at", x, "=", basis.evaluate(f, x))
print("same value directly:", basis.tri_cos(float(np.dot([1, -2, 3], x))))

# sign normalization halves the nonzero lattice: for d = 2 and entries up to
# M there are ((2M+1)^2 - 1)/2 admissible frequency vectors
for bound in (1, 2, 3):
    indices = basis.enumerate_indices(2, bound)
    print(f"\nd=2, |alpha_i| <= {bound}: {len(indices)} indices")
    if bound == 1:
        print("  lexicographic order:", [ix.alpha for ix in indices])
