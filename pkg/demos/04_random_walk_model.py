"""
The random-walk model
=====================

Replace μ(i) by independent steps with the same limiting law and look at
the sums: mean 0, variance 2pN, approximately normal, and an iterated
logarithm statistic of order one.
"""

import math

import numpy as np

from mertenslab import clt_check, monte_carlo, sieve_mobius, simulate_path
from mertenslab.walk import P_LIMIT, ks_two_sample, walk_sigma

# %%
path = simulate_path(20, seed=1)
print(path.values)

# %%
ens = monte_carlo(10**4, 10**4, master_seed=20240101)
print(ens.terminal.mean(), ens.terminal.var(), 2 * P_LIMIT * 10**4)
print(clt_check(ens))

# %%
# Iterated logarithm statistic over [1e3, 1e6].
lil = monte_carlo(10**6, 50, master_seed=7).lil
print(np.quantile(lil, [0.05, 0.5, 0.95]))

# %%
# Driving the chain with the actual prefix frequencies adds a drift of
# sum M(i)/i, visible against the asymptotic ensemble.
table = sieve_mobius(10**4)
emp = monte_carlo(10**4, 2000, "empirical", 3, table=table)
asy = monte_carlo(10**4, 2000, "asymptotic", 3)
s = walk_sigma(10**4)
print(emp.terminal.mean(), ks_two_sample(emp.terminal / s, asy.terminal / s), math.sqrt(2 * P_LIMIT * 1e4))
