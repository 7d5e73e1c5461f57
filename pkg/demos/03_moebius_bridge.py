"""
The Moebius bridge to the trigonometric system
==============================================

Each normalized triangle wave expands over odd harmonics of its smooth
counterpart with coefficients mu/(2m+1)^2.  Inverting that expansion writes
sqrt(2) cos(2 pi x) as an odd-harmonic series over rescaled triangle waves
whose coefficients are Moebius values mu(l)/l^2 - the inverse of the odd
divisor convolution.  The same mechanism expands two-factor products into
2D ridge waves, which is what makes the multivariate system complete.
"""

import math

import numpy as np

from pltrig import fourier
from pltrig.oracle import integrate_nd

mu = fourier.mu_constant()
print(f"mu = {mu:.15f},  mu^2 * pi^4/96 = {mu**2 * math.pi**4 / 96:.15f}")

# leading coefficients of the decomposition of sqrt(2) cos(2 pi x)
series = fourier.decomposition_coefficients("cos", 15)
print("\ncos decomposition coefficients (odd l, mu(l)/l^2):")
for ell, coef in series.terms:
    print(f"  l={ell:2d}: {str(coef):>7s}")

# L2 convergence of the truncated series, measured by quadrature
target = lambda x: math.sqrt(2.0) * np.cos(2 * np.pi * np.asarray(x))
print("\ntruncation L vs quadrature L2 error:")
for L in (9, 19, 49, 99):
    s = fourier.decomposition_coefficients("cos", L)
    err = math.sqrt(integrate_nd(
        lambda x: (target(x) - fourier.evaluate_decomposition(s, x)) ** 2,
        1, cells=2003))
    print(f"  L={L:3d}: {err:.6e}")

# the divisor convolution that forces the Moebius coefficients
print("\nconvolution sums (1 at n=1, 0 beyond):",
      [fourier.convolution_sum(n) for n in (1, 2, 3, 15, 30, 45)])

# a two-factor product expands into 2D ridge waves over both diagonal
# directions; the truncation error again falls with the harmonic cutoff
prod = lambda p: 2.0 * np.cos(2 * np.pi * p[:, 0]) * np.cos(2 * np.pi * p[:, 1])
print("\ncos(x1) cos(x2) expansion into ridge waves:")
terms = fourier.product_decomposition_2d(("cos", "cos"), (1, 1), 3)
for fn, coef in terms:
    print(f"  {str(fn):>8s}: {coef: .6f}")
for L in (9, 29):
    terms = fourier.product_decomposition_2d(("cos", "cos"), (1, 1), L)
    err = math.sqrt(integrate_nd(
        lambda p: (prod(p) - fourier.evaluate_rescaled_terms(terms, p)) ** 2,
        2, cells=101))
    print(f"  truncation {L:2d}: L2 error {err:.5e}")
