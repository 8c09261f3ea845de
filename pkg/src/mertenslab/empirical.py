"""Relative frequencies of μ on [1, n] and the distribution functions built from them.

Both step functions follow the four-piece tables literally: 0 for y < -1,
the mass of -1 on [-1, 0), the masses of -1 and 0 on [0, 1), and 1 for
y >= 1.  The pieces are closed on the left, so evaluating exactly at a jump
point returns the value after the jump.

Frequency identities are exact (``fractions.Fraction``); floats appear only
in residuals and sup-distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import MertensSeries, MobiusTable, OmegaTable, check_index, squarefree_prefix

P_LIMIT = 3.0 / math.pi**2
SQUAREFREE_DENSITY = 6.0 / math.pi**2


class IdentityError(AssertionError):
    """An exact identity between tables failed; the tables are corrupt."""


@dataclass(frozen=True)
class FrequencyTriple:
    n: int
    c1: int  # mu = +1
    c2: int  # mu = -1
    c3: int  # mu = 0

    def __post_init__(self):
        if self.c1 + self.c2 + self.c3 != self.n:
            raise ValueError(f"counts {self.c1}+{self.c2}+{self.c3} != n={self.n}")

    @property
    def nu1(self) -> Fraction:
        return Fraction(self.c1, self.n)

    @property
    def nu2(self) -> Fraction:
        return Fraction(self.c2, self.n)

    @property
    def nu3(self) -> Fraction:
        return Fraction(self.c3, self.n)


@dataclass(frozen=True)
class EmpiricalCDF:
    """Step function with masses nu2 at -1, nu3 at 0, nu1 at +1."""

    nu2: Fraction
    nu3: Fraction

    def __call__(self, y: float) -> float:
        return float(_step(y, self.nu2, self.nu2 + self.nu3))

    def pieces(self) -> tuple[float, float, float, float]:
        return (0.0, float(self.nu2), float(self.nu2 + self.nu3), 1.0)


@dataclass(frozen=True)
class LimitCDF:
    p: float = P_LIMIT

    def __call__(self, y: float) -> float:
        return float(_step(y, self.p, 1.0 - self.p))

    def pieces(self) -> tuple[float, float, float, float]:
        return (0.0, self.p, 1.0 - self.p, 1.0)


@dataclass(frozen=True)
class MomentSummary:
    n: int
    mean: Fraction
    variance: Fraction


@dataclass(frozen=True)
class ResidualRow:
    n: int
    nu1_resid: float
    nu2_resid: float
    squarefree_resid: float
    nu1_scaled: float
    nu2_scaled: float
    squarefree_scaled: float


def _step(y, a, b):
    y = float(y)
    if not math.isfinite(y):
        raise ValueError(f"y must be finite, got {y}")
    if y < -1:
        return 0
    if y < 0:
        return a
    if y < 1:
        return b
    return 1


def frequencies(table: MobiusTable, n: int) -> FrequencyTriple:
    n = check_index(n, table.limit)
    v = table.values[1 : n + 1]
    c1 = int(np.count_nonzero(v == 1))
    c2 = int(np.count_nonzero(v == -1))
    return FrequencyTriple(n, c1, c2, n - c1 - c2)


def frequency_prefix(table: MobiusTable) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative counts (c1[n], c2[n]) for every n; slot 0 is 0."""
    v = table.values
    return np.cumsum(v == 1, dtype=np.int64), np.cumsum(v == -1, dtype=np.int64)


def density_identity(freq: FrequencyTriple, series: MertensSeries) -> Fraction:
    """nu1 - nu2, checked to equal M(n)/n exactly."""
    n = check_index(freq.n, series.limit)
    gap = freq.nu1 - freq.nu2
    expected = Fraction(int(series.prefix[n]), n)
    if gap != expected:
        raise IdentityError(f"n={n}: nu1 - nu2 = {gap} but M(n)/n = {expected}")
    return gap


def limit_cdf_eval(y: float) -> float:
    return LimitCDF()(y)


def empirical_cdf(freq: FrequencyTriple) -> EmpiricalCDF:
    return EmpiricalCDF(freq.nu2, freq.nu3)


def cdf_sup_distance(fn: EmpiricalCDF | LimitCDF, f: EmpiricalCDF | LimitCDF) -> float:
    # both are constant between the jump points, so the sup is a max over pieces
    return max(abs(a - b) for a, b in zip(fn.pieces(), f.pieces()))


def moments(source, n: int) -> MomentSummary:
    """Exact mean and variance of f(1..n) where f is a table or integer array.

    ``source`` may be a MobiusTable, an OmegaTable or any 1-indexed integer
    array (e.g. ``np.abs(table.values)``).
    """
    if isinstance(source, MobiusTable):
        arr, limit = source.values, source.limit
    elif isinstance(source, OmegaTable):
        arr, limit = source.counts, source.limit
    else:
        arr = np.asarray(source)
        limit = arr.size - 1
    n = check_index(n, limit)
    v = arr[1 : n + 1].astype(np.int64)
    s1 = int(v.sum())
    s2 = int((v * v).sum())
    mean = Fraction(s1, n)
    return MomentSummary(n, mean, Fraction(s2, n) - mean * mean)


def nu_residuals(table: MobiusTable, checkpoints) -> list[ResidualRow]:
    rows = []
    for n in checkpoints:
        f = frequencies(table, n)
        r1 = float(f.nu1) - P_LIMIT
        r2 = float(f.nu2) - P_LIMIT
        rq = float(f.nu1 + f.nu2) - SQUAREFREE_DENSITY
        root = math.sqrt(f.n)
        rows.append(ResidualRow(f.n, r1, r2, rq, root * r1, root * r2, root * rq))
    return rows


def frequency_rows(table: MobiusTable, series: MertensSeries, checkpoints):
    """Rows (n, nu1, nu2, nu3, mertens, sup_distance) for the CSV emitter."""
    limit = LimitCDF()
    rows = []
    for n in checkpoints:
        f = frequencies(table, n)
        density_identity(f, series)
        rows.append((f.n, float(f.nu1), float(f.nu2), float(f.nu3),
                     int(series.prefix[f.n]), cdf_sup_distance(empirical_cdf(f), limit)))
    return rows


def squarefree_ratio(table: MobiusTable, checkpoints) -> list[tuple[int, float]]:
    q = squarefree_prefix(table)
    return [(int(n), int(q[check_index(n, table.limit)]) / int(n)) for n in checkpoints]
