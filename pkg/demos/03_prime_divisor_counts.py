"""
Counting prime divisors
=======================

ω(n) is sieved alongside μ.  We compare its histogram with the Landau
formula, look at the parity split of squarefree numbers with one prime
factor, and measure how far the standardized counts are from normal.
"""

import math

from mertenslab import (erdos_kac_check, k_max, omega_histogram, parity_symmetry,
                        poisson_comparison, sieve_both)
from mertenslab.omega import observed_max_omega

mobius, omega = sieve_both(10**6)
n = 10**6

# %%
for row in poisson_comparison(omega_histogram(omega, None, n, "all")):
    print(f"k={row.k}  empirical={row.empirical:.5f}  landau={row.landau:.5f}")

# %%
# No even squarefree number above 2 has a single prime factor.
print(omega_histogram(omega, mobius, n, "even-squarefree")[1])
odd = omega_histogram(omega, mobius, n, "odd-squarefree")[1]
print(odd * math.log(n) / n)

# %%
# The k_max formula against the observed maximum.
print(k_max(n), observed_max_omega(omega, n))

# %%
# ω is integer valued, so the KS distance to a continuous law stays large.
print(erdos_kac_check(omega, n))
print(parity_symmetry(omega_histogram(omega, mobius, n, "squarefree")))
