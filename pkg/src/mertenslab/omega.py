"""Distribution of ω(n), the number of distinct prime divisors.

Filters for histograms:

``all``
    every i in [1, limit] (ω(1) = 0 lands in bin 0).
``squarefree``
    every squarefree i in [1, limit].
``odd-squarefree`` / ``even-squarefree``
    squarefree i in [3, limit] of the given parity.  1 and 2 are left out,
    so ``odd + even == squarefree - #{i <= min(limit, 2)}``.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import BoundsError, MobiusTable, OmegaTable, check_index
from .walk import KSResult, ks_distance, standard_normal_cdf

FILTERS = ("all", "squarefree", "odd-squarefree", "even-squarefree")


@dataclass(frozen=True, eq=False)
class OmegaHistogram:
    limit: int
    filter: str
    counts: np.ndarray  # counts[k] = #{qualifying i <= limit : omega(i) = k}

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, k: int) -> int:
        return int(self.counts[k]) if 0 <= k < self.counts.size else 0


@dataclass(frozen=True)
class PoissonRow:
    n: int
    k: int
    empirical: float
    poisson: float
    landau: float


@dataclass(frozen=True)
class SymmetryReport:
    n: int
    centre: int  # floor(log log n)
    adjacent_gap: float  # |nu{omega=c} - nu{omega=c+1}|
    paired_gaps: tuple[tuple[int, int, float], ...]  # (j, k, |nu{omega=j} - nu{omega=k}|)
    parity_imbalance: float  # nu{omega even} - nu{omega odd} over squarefree, = M(n)/n


def omega_histogram(omega: OmegaTable, mobius: MobiusTable | None, limit: int,
                    filter: str = "all") -> OmegaHistogram:
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    limit = check_index(limit, omega.limit, "limit")
    w = omega.counts[1 : limit + 1]
    if filter == "all":
        sel = w
    else:
        if mobius is None:
            raise ValueError(f"filter {filter!r} needs a MobiusTable")
        check_index(limit, mobius.limit, "limit")
        mask = mobius.values[1 : limit + 1] != 0
        if filter != "squarefree":
            i = np.arange(1, limit + 1)
            mask &= i > 2
            mask &= (i % 2 == 1) if filter == "odd-squarefree" else (i % 2 == 0)
        sel = w[mask]
    counts = np.bincount(sel, minlength=1).astype(np.int64)
    return OmegaHistogram(limit, filter, counts)


def landau_frequency(n: float, k: int) -> float:
    """(log log n)^(k-1) / ((k-1)! log n)."""
    if n < 3:
        raise BoundsError(f"n must be >= 3, got {n}")
    if k < 1:
        raise BoundsError(f"k must be >= 1, got {k}")
    lam = math.log(math.log(n))
    return lam ** (k - 1) / (math.factorial(k - 1) * math.log(n))


def poisson_pmf(j: int, lam: float) -> float:
    return math.exp(-lam + j * math.log(lam) - math.lgamma(j + 1)) if lam > 0 else float(j == 0)


def poisson_comparison(hist: OmegaHistogram, n: int | None = None) -> list[PoissonRow]:
    """Empirical nu{omega = k} against Poisson(k - 1; log log n) and the Landau formula.

    Empirical frequencies are counts divided by ``hist.limit``.
    """
    n = hist.limit if n is None else int(n)
    if n < 3:
        raise BoundsError(f"n must be >= 3, got {n}")
    lam = math.log(math.log(n))
    kmax = int(np.flatnonzero(hist.counts).max()) if hist.total else 0
    return [PoissonRow(n, k, hist[k] / hist.limit, poisson_pmf(k - 1, lam), landau_frequency(n, k))
            for k in range(1, kmax + 1)]


def k_max(n: int) -> int:
    """floor(log n / log log n), defined for n >= 16."""
    if n < 16:
        raise BoundsError(f"k_max needs n >= 16, got {n}")
    return math.floor(math.log(n) / math.log(math.log(n)))


def observed_max_omega(omega: OmegaTable, n: int) -> int:
    n = check_index(n, omega.limit)
    return int(omega.counts[1 : n + 1].max())


def erdos_kac_sample(omega: OmegaTable, n: int) -> np.ndarray:
    """(omega(i) - log log n) / sqrt(log log n) for 2 <= i <= n."""
    n = check_index(n, omega.limit)
    if n < 3:
        raise BoundsError(f"n must be >= 3, got {n}")
    lam = math.log(math.log(n))
    return (omega.counts[2 : n + 1].astype(np.float64) - lam) / math.sqrt(lam)


def erdos_kac_check(omega: OmegaTable, n: int) -> KSResult:
    """KS distance of the standardized ω sample against Φ.

    ω is integer valued, so the sample sits on a lattice and the distance is
    at least half the largest atom of its distribution.
    """
    if n < 100:
        raise BoundsError(f"erdos_kac_check needs n >= 100, got {n}")
    return ks_distance(erdos_kac_sample(omega, n), standard_normal_cdf, "standard-normal")


def parity_symmetry(hist: OmegaHistogram, n: int | None = None) -> SymmetryReport:
    """Discrepancies in the pairing nu{c} ~ nu{c+1}, nu{c+2} ~ nu{c-1}, ...

    ``hist`` should use the ``squarefree`` filter for the parity imbalance to
    equal M(n)/n.
    """
    n = hist.limit if n is None else int(n)
    if n < 100:
        raise BoundsError(f"parity_symmetry needs n >= 100, got {n}")
    c = math.floor(math.log(math.log(n)))
    freq = hist.counts / hist.limit

    def nu(k):
        return float(freq[k]) if 0 <= k < freq.size else 0.0

    pairs = []
    j, k = c, c + 1
    while j >= 0:
        pairs.append((j, k, abs(nu(j) - nu(k))))
        # (c, c+1), (c-1, c+2), (c-2, c+3), ...
        j, k = j - 1, k + 1
    ks = np.arange(freq.size)
    imbalance = float(freq[ks % 2 == 0].sum() - freq[ks % 2 == 1].sum())
    return SymmetryReport(n, c, abs(nu(c) - nu(c + 1)), tuple(pairs), imbalance)


def omega_rows(omega: OmegaTable, mobius: MobiusTable | None, checkpoints, filter="all"):
    """CSV rows (n, k, empirical_freq, landau, poisson)."""
    rows = []
    for n in checkpoints:
        hist = omega_histogram(omega, mobius, n, filter)
        rows.extend((r.n, r.k, r.empirical, r.landau, r.poisson) for r in poisson_comparison(hist, n))
    return rows


def erdos_kac_rows(omega: OmegaTable, checkpoints):
    """CSV rows (n, ks_distance)."""
    return [(int(n), erdos_kac_check(omega, n).distance) for n in checkpoints]
