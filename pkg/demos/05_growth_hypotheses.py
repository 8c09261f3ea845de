"""
M(n) against the growth bounds
==============================

Normalize M(n) by sqrt(n), sqrt(n log log n) and n^(1/2 + xi), and place
the actual value inside the random-walk model's 90% band.
"""

from mertenslab import (growth_report, mertens_bound_check, mertens_series, model_vs_actual,
                        monte_carlo, running_sups, sieve_mobius)
from mertenslab.bench import REPORT_HEADER

series = mertens_series(sieve_mobius(10**6))
cps = [10**3, 10**4, 10**5, 10**6]

# %%
print(REPORT_HEADER)
for row in growth_report(series, cps).rows:
    print(row)

# %%
for v in running_sups(growth_report(series, cps)):
    print(v)
print(mertens_bound_check(series))

# %%
ens = monte_carlo(10**6, 200, master_seed=11, checkpoints=cps)
for row in model_vs_actual(series, ens, cps):
    print(row)
