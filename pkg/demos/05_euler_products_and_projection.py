"""
Euler products behind the row sums, and L2 projection
=====================================================

The Gershgorin row sums of the normalized Gram matrix are controlled by the
partial products of (1 + p^-2)/(1 - p^-2): over all primes the product is
5/2, over odd primes 3/2, which yields off-diagonal row sums at most
3/2 - 1 = 1/2.  The well-conditioned Gram system then makes least-squares
projection onto a truncated system a plain Cholesky solve.
"""

import math

import numpy as np

from pltrig import basis
from pltrig.fourier import odd_power_sum
from pltrig.gram import canonical_system, project_l2
from pltrig.numtheory import euler_product_partial

print("prime bound   all primes    -> 5/2     odd primes   -> 3/2")
for bound in (10, 100, 1000, 10**4, 10**5):
    full = float(euler_product_partial(bound))
    odd = float(euler_product_partial(bound, include_two=False))
    print(f"{bound:11d}   {full:.9f} {abs(full-2.5):.1e}   "
          f"{odd:.9f} {abs(odd-1.5):.1e}")

# the cruder row-sum estimate ignores coprimality and lands at pi^4/64 - 1
s = odd_power_sum(2, 2_000_000)
print(f"\ncrude row-sum bound: {s*s - 1:.9f} vs pi^4/64 - 1 = "
      f"{math.pi**4/64 - 1:.9f}")

# projecting a smooth wave onto the truncated system: the conditioning is
# bounded by B/A = 3 for every truncation, so coefficients are stable
target = lambda x: math.sqrt(2.0) * np.cos(2 * np.pi * np.asarray(x))
print("\nprojection of sqrt(2) cos(2 pi x) onto truncations:")
for n in (9, 19, 49):
    system = canonical_system(1, n, normalized=True)
    coeffs, err = project_l2(target, system)
    head = ", ".join(f"{system[i]}: {coeffs[i]:+.5f}"
                     for i in np.argsort(-np.abs(coeffs))[:3])
    print(f"  N={n:3d}: L2 error {err:.5e}   [{head}]")

# a member of the system projects onto itself exactly
member = basis.sin_ridge(7, normalized=True)
coeffs, err = project_l2(member, canonical_system(1, 12, normalized=True))
hit = int(np.argmax(np.abs(coeffs)))
print(f"\nmember target: coefficient {coeffs[hit]:.12f} on index {hit}, "
      f"residual {err:.2e}")
