import math

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from mertenslab.arith import BoundsError, OmegaTable
from mertenslab.omega import (erdos_kac_check, erdos_kac_rows, erdos_kac_sample, k_max,
                              landau_frequency, observed_max_omega, omega_histogram, omega_rows,
                              parity_symmetry, poisson_comparison, poisson_pmf)


def test_histogram_examples(mobius_1e6, omega_1e6):
    assert omega_histogram(omega_1e6, mobius_1e6, 100, "even-squarefree")[1] == 0
    assert omega_histogram(omega_1e6, mobius_1e6, 100, "odd-squarefree")[1] == 24
    assert sympy.primepi(100) - 1 == 24
    assert omega_histogram(omega_1e6, None, 30, "all")[3] == 1


def test_histogram_matches_enumeration(mobius_1e6, omega_1e6):
    want = {}
    for i in range(1, 501):
        k = len(sympy.primefactors(i))
        want[k] = want.get(k, 0) + 1
    h = omega_histogram(omega_1e6, mobius_1e6, 500, "all")
    assert {k: h[k] for k in range(h.counts.size) if h[k]} == want


@pytest.mark.parametrize("limit", [1, 2, 3, 100, 9999, 10**6])
def test_histogram_bookkeeping(mobius_1e6, omega_1e6, limit):
    h = {f: omega_histogram(omega_1e6, mobius_1e6, limit, f)
         for f in ("all", "squarefree", "odd-squarefree", "even-squarefree")}
    q = int(np.count_nonzero(mobius_1e6.values[1 : limit + 1]))
    assert h["all"].total == limit
    assert h["squarefree"].total == q
    # 1 and 2 are squarefree but excluded from the parity filters
    assert h["odd-squarefree"].total + h["even-squarefree"].total + min(limit, 2) == q
    assert np.all(h["all"].counts[: h["squarefree"].counts.size] >= h["squarefree"].counts)


@pytest.mark.parametrize("limit", [3, 10, 1000, 10**5, 10**6])
def test_no_even_squarefree_with_one_prime(mobius_1e6, omega_1e6, limit):
    assert omega_histogram(omega_1e6, mobius_1e6, limit, "even-squarefree")[1] == 0


def test_histogram_rejects_bad_input(mobius_1e6, omega_1e6):
    with pytest.raises(ValueError):
        omega_histogram(omega_1e6, mobius_1e6, 10, "odd")
    with pytest.raises(BoundsError):
        omega_histogram(omega_1e6, mobius_1e6, 10**6 + 1, "all")
    with pytest.raises(ValueError):
        omega_histogram(omega_1e6, None, 10, "squarefree")


def test_landau_values():
    assert landau_frequency(10**6, 1) == pytest.approx(0.072382, abs=1e-6)
    assert landau_frequency(10**6, 2) == pytest.approx(0.190061, abs=2e-6)
    for n in (3, 100, 10**9):
        assert landau_frequency(n, 1) == pytest.approx(1 / math.log(n), rel=1e-15)


@pytest.mark.parametrize("n, k", [(2, 1), (1, 1), (100, 0)])
def test_landau_rejects(n, k):
    with pytest.raises(BoundsError):
        landau_frequency(n, k)


def test_poisson_pmf():
    lam = math.log(math.log(10**6))
    assert poisson_pmf(0, lam) == pytest.approx(math.exp(-lam), rel=1e-14)
    assert poisson_pmf(0, lam) == pytest.approx(0.07239, abs=1e-5)
    assert sum(poisson_pmf(j, lam) for j in range(60)) == pytest.approx(1.0, abs=1e-14)


def test_poisson_comparison(omega_1e6):
    rows = poisson_comparison(omega_histogram(omega_1e6, None, 10**6, "all"))
    assert [r.k for r in rows] == list(range(1, 8))
    assert rows[0].poisson == pytest.approx(rows[0].landau, rel=1e-12)
    assert 0.9 <= rows[0].empirical * math.log(10**6) <= 1.3


@pytest.mark.parametrize("N", [10**4, 10**5, 10**6])
def test_one_prime_divisor_frequency(omega_1e6, N):
    c = omega_histogram(omega_1e6, None, N, "all")[1]
    assert 0.9 <= c * math.log(N) / N <= 1.3


@pytest.mark.parametrize("n, expected", [(10**6, 5), (16, 2), (10**9, 6)])
def test_k_max(n, expected):
    assert k_max(n) == expected


def test_k_max_rejects_small():
    with pytest.raises(BoundsError):
        k_max(15)


def test_k_max_monotone():
    ns = np.unique(np.logspace(math.log10(16), 9, 400).astype(np.int64))
    vals = [k_max(int(n)) for n in ns]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_k_max_versus_observed(omega_1e6):
    assert observed_max_omega(omega_1e6, 10**6) == 7  # 510510 = 2*3*5*7*11*13*17
    assert omega_1e6[510510] == 7
    assert k_max(10**6) == 5


def test_erdos_kac_sample(omega_1e6):
    s = erdos_kac_sample(omega_1e6, 1000)
    assert s.size == 999
    lam = math.log(math.log(1000))
    assert s[0] == pytest.approx((1 - lam) / math.sqrt(lam))


def test_erdos_kac_degenerate():
    counts = np.full(201, 3, dtype=np.uint8)
    counts[0] = 0
    assert erdos_kac_check(OmegaTable(200, counts), 200).distance >= 0.5


def test_erdos_kac_rejects_small(omega_1e6):
    with pytest.raises(BoundsError):
        erdos_kac_check(omega_1e6, 99)


def test_erdos_kac_decreasing(omega_1e7):
    d5 = erdos_kac_check(omega_1e7, 10**5).distance
    d6 = erdos_kac_check(omega_1e7, 10**6).distance
    d7 = erdos_kac_check(omega_1e7, 10**7).distance
    assert d6 <= d5 + 0.01 and d7 <= d6 + 0.01 and d7 <= d5 + 0.01


def test_erdos_kac_lattice_floor(omega_1e6):
    # the sample lives on a lattice, so KS is at least half the largest atom
    s = erdos_kac_sample(omega_1e6, 10**6)
    _, counts = np.unique(s, return_counts=True)
    assert erdos_kac_check(omega_1e6, 10**6).distance >= counts.max() / s.size / 2


def test_parity_symmetry(mobius_1e6, omega_1e6, series_1e6):
    for n in (100, 1234, 10**6):
        h = omega_histogram(omega_1e6, mobius_1e6, n, "squarefree")
        r = parity_symmetry(h)
        assert r.parity_imbalance == pytest.approx(int(series_1e6[n]) / n, abs=1e-15)
    assert abs(r.parity_imbalance) < 1e-3
    assert r.centre == 2
    assert r.adjacent_gap < 0.1
    assert r.paired_gaps[0][:2] == (2, 3) and r.paired_gaps[1][:2] == (1, 4)


def test_parity_symmetry_rejects_small(mobius_1e6, omega_1e6):
    with pytest.raises(BoundsError):
        parity_symmetry(omega_histogram(omega_1e6, mobius_1e6, 99, "squarefree"))


@given(st.integers(3, 10**6), st.sampled_from(["all", "squarefree", "odd-squarefree", "even-squarefree"]))
def test_sharded_histograms_merge(mobius_1e6, omega_1e6, limit, flt):
    # counts over [1, a] plus the shard (a, limit] equal the counts over [1, limit]
    a = limit // 2 or 1
    full = omega_histogram(omega_1e6, mobius_1e6, limit, flt).counts
    left = omega_histogram(omega_1e6, mobius_1e6, a, flt).counts
    size = max(full.size, left.size)
    shard = np.pad(full, (0, size - full.size)) - np.pad(left, (0, size - left.size))
    assert np.all(shard >= 0)


def test_csv_rows(mobius_1e6, omega_1e6):
    rows = omega_rows(omega_1e6, mobius_1e6, [1000])
    assert rows[0][:2] == (1000, 1)
    assert erdos_kac_rows(omega_1e6, [1000])[0][0] == 1000
