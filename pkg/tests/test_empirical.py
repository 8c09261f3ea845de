import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mertenslab.arith import BoundsError, MertensSeries, mertens_series, sieve_mobius
from mertenslab.empirical import (EmpiricalCDF, FrequencyTriple, IdentityError, LimitCDF,
                                  cdf_sup_distance, density_identity, empirical_cdf, frequencies,
                                  frequency_rows, limit_cdf_eval, moments, nu_residuals)

P = 3 / math.pi**2


@pytest.fixture(scope="module")
def t10():
    return sieve_mobius(10)


def test_frequencies_small(t10):
    assert frequencies(t10, 1) == FrequencyTriple(1, 1, 0, 0)
    f = frequencies(t10, 10)
    assert (f.c1, f.c2, f.c3) == (3, 4, 3)
    assert f.nu1 + f.nu2 + f.nu3 == 1


def test_frequencies_bounds(t10):
    with pytest.raises(BoundsError):
        frequencies(t10, 11)


def test_triple_rejects_bad_counts():
    with pytest.raises(ValueError):
        FrequencyTriple(10, 3, 4, 4)


def test_frequencies_1e6(mobius_1e6):
    f = frequencies(mobius_1e6, 10**6)
    assert abs(float(f.nu1) - P) < 0.005
    assert abs(float(f.nu2) - P) < 0.005
    assert abs(float(f.nu3) - (1 - 6 / math.pi**2)) < 0.005


@pytest.mark.parametrize("n, expected", [(10, Fraction(-1, 10)), (1, Fraction(1)), (2, Fraction(0))])
def test_density_identity_examples(t10, n, expected):
    s = mertens_series(t10)
    assert density_identity(frequencies(t10, n), s) == expected


def test_density_identity_detects_corruption(t10):
    s = mertens_series(t10)
    bad = s.prefix.copy()
    bad[10] += 1
    with pytest.raises(IdentityError):
        density_identity(frequencies(t10, 10), MertensSeries(10, bad))


def test_density_identity_every_n_up_to_1e5(mobius_1e6, series_1e6):
    for n in range(1, 10**5 + 1, 97):
        density_identity(frequencies(mobius_1e6, n), series_1e6)


@pytest.mark.parametrize("y, expected", [(-2, 0.0), (-0.5, P), (0.5, 1 - P), (1, 1.0), (7, 1.0), (-1, P), (0, 1 - P)])
def test_limit_cdf(y, expected):
    assert limit_cdf_eval(y) == pytest.approx(expected, abs=1e-15)
    assert round(P, 6) == 0.303964


@pytest.mark.parametrize("y", [math.nan, math.inf, -math.inf])
def test_limit_cdf_rejects_nonfinite(y):
    with pytest.raises(ValueError):
        limit_cdf_eval(y)


def test_empirical_cdf_examples(t10):
    f10 = empirical_cdf(frequencies(t10, 10))
    assert f10(-0.5) == pytest.approx(0.4)
    assert f10(0.5) == pytest.approx(0.7)
    assert f10(1) == 1.0
    f1 = empirical_cdf(frequencies(t10, 1))
    assert f1(0.5) == 0.0 and f1(1) == 1.0


def test_sup_distance_examples(t10):
    assert cdf_sup_distance(LimitCDF(), LimitCDF()) == 0.0
    d = cdf_sup_distance(empirical_cdf(frequencies(t10, 10)), LimitCDF())
    assert d == pytest.approx(0.4 - P, abs=1e-12)
    assert round(d, 6) == 0.096036


def test_sup_distance_matches_dense_grid(mobius_1e6):
    # brute-force sup over a fine grid including the jump points
    grid = np.concatenate([np.linspace(-3, 3, 6001), [-1, 0, 1]])
    for n in (10, 1000, 12345):
        fn = empirical_cdf(frequencies(mobius_1e6, n))
        brute = max(abs(fn(y) - limit_cdf_eval(y)) for y in grid)
        assert cdf_sup_distance(fn, LimitCDF()) == pytest.approx(brute, abs=1e-15)


def test_sup_distance_convergence(mobius_1e6):
    d = [cdf_sup_distance(empirical_cdf(frequencies(mobius_1e6, n)), LimitCDF())
         for n in (10**3, 10**4, 10**5, 10**6)]
    assert d[-1] < 0.005
    assert all(b <= a + 0.002 for a, b in zip(d, d[1:]))


@given(st.integers(1, 10**6))
def test_empirical_cdf_is_valid(mobius_1e6, n):
    fn = empirical_cdf(frequencies(mobius_1e6, n))
    ys = [-5, -1.0000001, -1, -0.3, 0, 0.3, 0.9999999, 1, 5]
    vals = [fn(y) for y in ys]
    assert vals[0] == 0 and vals[-1] == 1 and fn(1) == 1
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_moments_examples(t10):
    m = moments(t10, 10)
    assert m.mean == Fraction(-1, 10) and m.variance == Fraction(69, 100)
    m1 = moments(t10, 1)
    assert m1.mean == 1 and m1.variance == 0
    assert moments(np.abs(t10.values), 10).mean == Fraction(7, 10)


@pytest.mark.parametrize("n", [1, 2, 10, 999, 10**5, 10**6])
def test_moments_match_mertens(mobius_1e6, series_1e6, n):
    m = moments(mobius_1e6, n)
    q = int(np.count_nonzero(mobius_1e6.values[1 : n + 1]))
    mn = Fraction(int(series_1e6[n]), n)
    assert m.mean == mn
    assert m.variance == Fraction(q, n) - mn * mn
    assert m.variance >= 0


def test_moments_of_omega(omega_1e6):
    m = moments(omega_1e6, 30)
    vals = [len({p for p in range(2, i + 1) if i % p == 0 and all(p % d for d in range(2, p))}) for i in range(1, 31)]
    assert m.mean == Fraction(sum(vals), 30)


def test_nu_residuals(mobius_1e6):
    r1, r10, r4 = nu_residuals(mobius_1e6, [1, 10, 10**4])
    assert r1.nu1_resid == pytest.approx(1 - P)
    assert r10.squarefree_resid + 6 / math.pi**2 == pytest.approx(0.7)
    assert abs(r4.squarefree_resid) < 2 / math.sqrt(10**4)
    assert r4.squarefree_scaled == pytest.approx(r4.squarefree_resid * 100)


def test_frequency_rows(t10):
    (row,) = frequency_rows(t10, mertens_series(t10), [10])
    assert row[:5] == (10, 0.3, 0.4, 0.3, -1)
    assert row[5] == pytest.approx(0.096036, abs=1e-6)
