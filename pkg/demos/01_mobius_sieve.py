"""
Sieving the Möbius function
===========================

Build μ(n) for n up to a million, check it against trial division, and look
at the Mertens function M(n) it produces.
"""

import numpy as np

from mertenslab import mertens_series, mobius_oracle, sieve_mobius, squarefree_count

# %%
# One segmented pass gives an int8 table; slot 0 is unused.
table = sieve_mobius(10**6)
print(table.values[1:21])

# %%
# The sieve and the trial-division oracle share no code.
sample = np.random.default_rng(0).integers(1, 10**6, size=2000)
assert all(int(table[n]) == mobius_oracle(int(n)) for n in sample)

# %%
# Prefix sums give M(n).  |M(n)| stays well below sqrt(n) on this range.
series = mertens_series(table)
for n in (10, 100, 1000, 10**4, 10**5, 10**6):
    print(f"M({n}) = {series[n]:5d}   |M|/sqrt(n) = {abs(series[n]) / n**0.5:.3f}")

# %%
# Squarefree integers have density 6/pi^2.
q = squarefree_count(table, 10**6).q
print(q / 10**6, 6 / np.pi**2)
