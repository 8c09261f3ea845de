"""Lazy symmetric random walk model of the Mertens function.

Steps x'_n take +1, -1, 0 with probabilities (p_up, p_down, p_stay).  In
``asymptotic`` mode these are (p, p, 1 - 2p) with p = 3/pi^2.  In
``empirical`` mode step i uses the Möbius frequencies over [1, i]; in
``empirical-fixed`` mode every step uses the frequencies over [1, N].

Seeding: replicate r of an ensemble gets ``mix_seed(master_seed, r)``, which
runs the splitmix64 finalizer over the 64-bit word ``master_seed`` advanced
by ``r + 1`` golden-ratio increments.  That seed initializes a PCG64
generator owned by the replicate alone, so any parallel schedule gives the
same result as the sequential loop.

Each step draws one raw 64-bit word u.  Its top 53 bits are compared with
cumulative thresholds in the fixed order +1, -1, 0:
``+1 if u53 < floor(p_up * 2**53)``, else ``-1 if u53 < floor((p_up + p_down) * 2**53)``,
else 0.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import BoundsError, MobiusTable, check_index
from .empirical import P_LIMIT

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
DEFAULT_STEP_BUDGET = 2 * 10**9

MODES = ("asymptotic", "empirical", "empirical-fixed")


class BudgetError(ValueError):
    """Requested N*M exceeds the configured step budget."""


@dataclass(frozen=True)
class StepDistribution:
    p_up: float
    p_down: float
    p_stay: float

    def __post_init__(self):
        probs = (self.p_up, self.p_down, self.p_stay)
        if any(not math.isfinite(x) or x < 0 for x in probs):
            raise ValueError(f"probabilities must be finite and non-negative: {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {sum(probs)!r}")


@dataclass(frozen=True, eq=False)
class WalkPath:
    steps: int
    values: np.ndarray  # int64, S_0..S_N
    seed: int


@dataclass(frozen=True, eq=False)
class Ensemble:
    steps: int
    replicates: int
    mode: str
    master_seed: int
    seeds: np.ndarray  # uint64 per replicate
    terminal: np.ndarray  # int64, S_N per replicate
    lil: np.ndarray  # float64, NaN when lil_n0 is not applicable
    lil_n0: int | None
    checkpoints: tuple[int, ...]
    snapshots: np.ndarray  # int64, shape (replicates, len(checkpoints))
    first_path: WalkPath | None = field(default=None)

    def snapshot(self, n: int) -> np.ndarray:
        try:
            j = self.checkpoints.index(n)
        except ValueError:
            raise KeyError(f"checkpoint {n} not recorded; have {self.checkpoints}") from None
        return self.snapshots[:, j]


@dataclass(frozen=True)
class KSResult:
    size: int
    distance: float
    reference: str


# --- seeding ----------------------------------------------------------------

def splitmix64_finalize(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, replicate: int) -> int:
    return splitmix64_finalize(master_seed + (replicate + 1) * GOLDEN_GAMMA)


# --- step distributions -----------------------------------------------------

def asymptotic_step_dist() -> StepDistribution:
    return StepDistribution(P_LIMIT, P_LIMIT, 1.0 - 2.0 * P_LIMIT)


def empirical_step_dist(table: MobiusTable, i: int) -> StepDistribution:
    i = check_index(i, table.limit, "i")
    v = table.values[1 : i + 1]
    c1 = int(np.count_nonzero(v == 1))
    c2 = int(np.count_nonzero(v == -1))
    return StepDistribution(c1 / i, c2 / i, (i - c1 - c2) / i)


_SCALE = float(2**53)


def _thresholds(dist: StepDistribution) -> tuple[int, int]:
    t1 = math.floor(dist.p_up * _SCALE)
    t2 = math.floor((dist.p_up + dist.p_down) * _SCALE)
    return t1, max(t1, t2)


def _empirical_thresholds(table: MobiusTable, steps: int):
    """Per-step thresholds; step i uses the frequencies over [1, i]."""
    if table.limit < steps:
        raise BoundsError(f"empirical mode needs table limit >= {steps}, have {table.limit}")
    v = table.values[1 : steps + 1]
    idx = np.arange(1, steps + 1, dtype=np.float64)
    c1 = np.cumsum(v == 1, dtype=np.int64)
    c12 = c1 + np.cumsum(v == -1, dtype=np.int64)
    t1 = np.floor(c1 / idx * _SCALE).astype(np.int64)
    t2 = np.floor(c12 / idx * _SCALE).astype(np.int64)
    return t1, np.maximum(t1, t2)


def _resolve_thresholds(steps, mode, table, dist):
    if dist is not None:
        return _thresholds(dist)
    if mode == "asymptotic":
        return _thresholds(asymptotic_step_dist())
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if table is None:
        raise BoundsError(f"mode {mode!r} needs a MobiusTable")
    if mode == "empirical":
        return _empirical_thresholds(table, steps)
    if table.limit < steps:
        raise BoundsError(f"empirical mode needs table limit >= {steps}, have {table.limit}")
    return _thresholds(empirical_step_dist(table, steps))


def _draw_steps(seed: int, steps: int, t1, t2) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    u = (rng.bit_generator.random_raw(steps) >> np.uint64(11)).astype(np.int64)
    return (u < t1).astype(np.int8) - ((u >= t1) & (u < t2)).astype(np.int8)


def _path_from_steps(x: np.ndarray) -> np.ndarray:
    s = np.empty(x.size + 1, dtype=np.int64)
    s[0] = 0
    np.cumsum(x, dtype=np.int64, out=s[1:])
    return s


def simulate_path(steps: int, mode: str = "asymptotic", seed: int = 0, *,
                  table: MobiusTable | None = None,
                  dist: StepDistribution | None = None) -> WalkPath:
    """One realization S_0..S_N of the walk.

    ``dist`` overrides ``mode`` with a fixed step distribution.
    """
    steps = int(steps)
    if steps < 1:
        raise BoundsError(f"steps must be >= 1, got {steps}")
    seed = int(seed) & MASK64
    t1, t2 = _resolve_thresholds(steps, mode, table, dist)
    x = _draw_steps(seed, steps, t1, t2)
    return WalkPath(steps, _path_from_steps(x), seed)


# --- statistics -------------------------------------------------------------

def standard_normal_cdf(y):
    """Φ(y) = erfc(-y / sqrt 2) / 2.

    Uses the C library ``erfc`` (accurate to a few ulp, far inside 1e-7).
    Accepts scalars or arrays.
    """
    if np.ndim(y) == 0:
        y = float(y)
        if not math.isfinite(y):
            raise ValueError(f"y must be finite, got {y}")
        # reflect so the tail is evaluated directly and symmetry holds exactly
        if y < 0:
            return 0.5 * math.erfc(-y / math.sqrt(2.0))
        return 1.0 - 0.5 * math.erfc(y / math.sqrt(2.0))
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(y)):
        raise ValueError("y must be finite")
    uniq, inv = np.unique(y, return_inverse=True)
    vals = np.array([standard_normal_cdf(v) for v in uniq.tolist()])
    return vals[inv].reshape(y.shape)


def ks_distance(sample, cdf, reference: str = "custom") -> KSResult:
    """One-sample KS sup-distance between ``sample`` and a CDF evaluator."""
    x = np.sort(np.asarray(sample, dtype=np.float64))
    m = x.size
    if m == 0:
        raise ValueError("sample must be non-empty")
    f = np.asarray(cdf(x), dtype=np.float64)
    i = np.arange(1, m + 1, dtype=np.float64)
    d = max(float(np.max(i / m - f)), float(np.max(f - (i - 1) / m)))
    return KSResult(m, min(max(d, 0.0), 1.0), reference)


def ks_two_sample(a, b) -> float:
    """Sup-distance between the empirical CDFs of two samples."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ValueError("samples must be non-empty")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def walk_sigma(n) -> float:
    return np.sqrt(2.0 * P_LIMIT * np.asarray(n, dtype=np.float64))


def clt_check(ens: Ensemble) -> KSResult:
    """KS distance of S_N / sqrt(2pN) against Φ."""
    if ens.replicates < 100:
        raise ValueError(f"clt_check needs at least 100 replicates, got {ens.replicates}")
    z = ens.terminal / walk_sigma(ens.steps)
    return ks_distance(z, standard_normal_cdf, "standard-normal")


def _lil_of_values(values: np.ndarray, n0: int) -> float:
    n = np.arange(n0, values.size, dtype=np.float64)
    denom = np.sqrt(2.0 * (2.0 * P_LIMIT * n) * np.log(np.log(n)))
    return float(np.max(np.abs(values[n0:]) / denom))


def lil_statistic(path: WalkPath, n0: int) -> float:
    """max_{n0 <= n <= N} |S_n| / sqrt(2 * 2pn * log log n)."""
    n0 = int(n0)
    if n0 < 16 or n0 > path.steps:
        raise BoundsError(f"n0 must satisfy 16 <= n0 <= {path.steps}, got {n0}")
    return _lil_of_values(path.values, n0)


# --- ensembles --------------------------------------------------------------

def monte_carlo(steps: int, replicates: int, mode: str = "asymptotic", master_seed: int = 0,
                checkpoints=(), *, table: MobiusTable | None = None,
                lil_n0: int | None = None, workers: int | None = None,
                budget: int = DEFAULT_STEP_BUDGET, keep_first_path: bool = False) -> Ensemble:
    """Seeded ensemble of independent walks.

    ``lil_n0`` defaults to min(1000, N) when N >= 16; the LIL column is NaN
    otherwise.  Results do not depend on ``workers``.
    """
    steps, replicates = int(steps), int(replicates)
    if steps < 1 or replicates < 1:
        raise BoundsError(f"steps and replicates must be >= 1, got {steps}, {replicates}")
    if steps * replicates > budget:
        raise BudgetError(f"N*M = {steps * replicates} exceeds step budget {budget}")
    checkpoints = tuple(sorted({int(c) for c in checkpoints}))
    for c in checkpoints:
        if not 1 <= c <= steps:
            raise BoundsError(f"checkpoint {c} outside [1, {steps}]")
    if lil_n0 is None and steps >= 16:
        lil_n0 = min(1000, steps)
    if lil_n0 is not None and not 16 <= lil_n0 <= steps:
        raise BoundsError(f"lil_n0 must satisfy 16 <= n0 <= {steps}, got {lil_n0}")
    master_seed = int(master_seed) & MASK64
    t1, t2 = _resolve_thresholds(steps, mode, table, None)

    seeds = np.array([mix_seed(master_seed, r) for r in range(replicates)], dtype=np.uint64)
    terminal = np.empty(replicates, dtype=np.int64)
    lil = np.full(replicates, np.nan)
    snaps = np.empty((replicates, len(checkpoints)), dtype=np.int64)
    cp_idx = np.array(checkpoints, dtype=np.int64)
    first = []

    def run(r):
        s = _path_from_steps(_draw_steps(int(seeds[r]), steps, t1, t2))
        terminal[r] = s[-1]
        snaps[r] = s[cp_idx]
        if lil_n0 is not None:
            lil[r] = _lil_of_values(s, lil_n0)
        if r == 0 and keep_first_path:
            first.append(WalkPath(steps, s, int(seeds[0])))

    if workers is None or workers <= 1:
        for r in range(replicates):
            run(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(replicates)))

    return Ensemble(steps, replicates, mode, master_seed, seeds, terminal, lil, lil_n0,
                    checkpoints, snaps, first[0] if first else None)


def checkpoint_summary(ens: Ensemble):
    """Per checkpoint: (n, mean, variance, KS distance vs Φ) of S_n."""
    rows = []
    for j, n in enumerate(ens.checkpoints):
        s = ens.snapshots[:, j].astype(np.float64)
        ks = ks_distance(s / walk_sigma(n), standard_normal_cdf, "standard-normal").distance
        rows.append((n, float(s.mean()), float(s.var()), ks))
    return rows
