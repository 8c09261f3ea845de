"""
Frequencies of μ and their limiting distribution
================================================

The counts of μ = +1, -1, 0 on [1, n] give a three-point distribution
F_n.  As n grows it approaches (p, p, 1 - 2p) with p = 3/pi^2.
"""

import math

from mertenslab import (LimitCDF, cdf_sup_distance, density_identity, empirical_cdf, frequencies,
                        mertens_series, moments, nu_residuals, sieve_mobius)

table = sieve_mobius(10**6)
series = mertens_series(table)

# %%
# nu1 - nu2 is M(n)/n exactly, as rationals.
for n in (10, 1000, 10**6):
    f = frequencies(table, n)
    print(n, f.nu1, f.nu2, f.nu3, density_identity(f, series))

# %%
# Sup-distance between F_n and the limit law.
for n in (10**3, 10**4, 10**5, 10**6):
    d = cdf_sup_distance(empirical_cdf(frequencies(table, n)), LimitCDF())
    print(f"n={n:>8}  sup|F_n - F| = {d:.6f}")

# %%
# Residuals and their sqrt(n)-scaled versions.
for r in nu_residuals(table, [10**3, 10**4, 10**5, 10**6]):
    print(r)

# %%
# Exact mean and variance of μ on [1, n].
m = moments(table, 10**6)
print(float(m.mean), float(m.variance), 6 / math.pi**2)
