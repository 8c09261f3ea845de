"""Growth statistics of M(n) against the candidate bound families.

The comparison is descriptive.  Finite data cannot tell a bounded
|M(n)|/sqrt(n) from one that grows like sqrt(log log n), and the lim sup
beyond 1.06 that disproves the Mertens bound lives far outside any range a
sieve can reach; reports only quote the sups observed on the computed range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import BoundsError, MertensSeries, MobiusTable, check_index
from .empirical import frequencies
from .walk import Ensemble, P_LIMIT

DEFAULT_XI = 0.05

BOUND_IDS = ("mertens", "constant", "infinite", "loglog", "riemann")

REPORT_HEADER = (
    "Descriptive growth comparison only: no finite range can distinguish a bounded "
    "|M(n)|/sqrt(n) from an unbounded one, and the known lim sup M(n)/sqrt(n) > 1.06 "
    "is not reproducible at sieve scale; observed running sups are reported instead."
)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    mertens: int
    density: float  # M(n)/n
    ratio_sqrt: float  # |M(n)| / n^(1/2)
    ratio_loglog: float  # |M(n)| / sqrt(n log log n)
    ratio_riemann: float  # |M(n)| / n^(1/2 + xi)
    freq_gap_scaled: float  # (nu1 - nu2) * sqrt(n)


@dataclass(frozen=True)
class GrowthReport:
    xi: float
    rows: tuple[GrowthRow, ...]

    @property
    def checkpoints(self) -> tuple[int, ...]:
        return tuple(r.n for r in self.rows)


@dataclass(frozen=True)
class BoundVerdict:
    bound: str
    sup: float
    argmax: int
    violated: bool = False  # only meaningful for the strict |M(n)| < sqrt(n) bound


@dataclass(frozen=True)
class ModelRow:
    n: int
    actual: float  # |M(n)| / sqrt(2pn)
    q05: float
    q50: float
    q95: float
    in_band: bool


def _check_checkpoints(checkpoints, limit):
    out = []
    for n in checkpoints:
        n = check_index(n, limit)
        if n < 16:
            raise BoundsError(f"checkpoint {n} < 16: log log n is not usable")
        out.append(n)
    return out


def growth_report(series: MertensSeries, checkpoints, xi: float = DEFAULT_XI) -> GrowthReport:
    if not 0 < xi < 0.5:
        raise ValueError(f"xi must lie in (0, 1/2), got {xi}")
    rows = []
    for n in _check_checkpoints(checkpoints, series.limit):
        m = int(series.prefix[n])
        root = math.sqrt(n)
        rows.append(GrowthRow(
            n, m, m / n, abs(m) / root,
            abs(m) / math.sqrt(n * math.log(math.log(n))),
            abs(m) / n ** (0.5 + xi),
            m / root,
        ))
    return GrowthReport(xi, tuple(rows))


def running_sups(report: GrowthReport) -> list[BoundVerdict]:
    """Observed sup of each normalized ratio over the report's checkpoints."""
    columns = {
        "mertens": "ratio_sqrt",
        "constant": "ratio_sqrt",
        "infinite": "ratio_sqrt",
        "loglog": "ratio_loglog",
        "riemann": "ratio_riemann",
    }
    verdicts = []
    for bound in BOUND_IDS:
        vals = [getattr(r, columns[bound]) for r in report.rows]
        j = int(np.argmax(vals))
        verdicts.append(BoundVerdict(bound, vals[j], report.rows[j].n,
                                     violated=bound == "mertens" and vals[j] >= 1.0))
    return verdicts


def mertens_bound_check(series: MertensSeries) -> BoundVerdict:
    """Check |M(n)| < sqrt(n) for every 2 <= n <= limit.

    Compared as M(n)^2 < n in integers, so there is no rounding.
    """
    if series.limit < 2:
        raise BoundsError("mertens_bound_check needs limit >= 2")
    m = series.prefix[2:]
    n = np.arange(2, series.limit + 1, dtype=np.int64)
    violated = bool(np.any(m * m >= n))
    ratio = np.abs(m) / np.sqrt(n)
    j = int(np.argmax(ratio))
    return BoundVerdict("mertens", float(ratio[j]), j + 2, violated)


def freq_gap_curve(table: MobiusTable, checkpoints) -> list[tuple[int, float]]:
    """(nu1 - nu2) * sqrt(n), computed from the frequency counts."""
    out = []
    for n in checkpoints:
        f = frequencies(table, n)
        out.append((f.n, float(f.nu1 - f.nu2) * math.sqrt(f.n)))
    return out


def model_vs_actual(series: MertensSeries, ens: Ensemble, checkpoints) -> list[ModelRow]:
    """Place |M(n)|/sqrt(2pn) inside the ensemble's 5-95% band of |S_n|/sqrt(2pn)."""
    rows = []
    for n in checkpoints:
        n = check_index(n, series.limit)
        if n not in ens.checkpoints:
            raise KeyError(f"ensemble has no snapshot at n={n}; have {ens.checkpoints}")
        sigma = math.sqrt(2.0 * P_LIMIT * n)
        z = np.abs(ens.snapshot(n)) / sigma
        q05, q50, q95 = (float(v) for v in np.quantile(z, [0.05, 0.5, 0.95]))
        actual = abs(int(series.prefix[n])) / sigma
        rows.append(ModelRow(n, actual, q05, q50, q95, q05 <= actual <= q95))
    return rows


def bench_rows(report: GrowthReport, model: list[ModelRow] | None = None):
    """CSV rows (n, mertens, ratio_sqrt, ratio_loglog, ratio_riemann,
    freq_gap_scaled, model_q05, model_q50, model_q95, in_band)."""
    by_n = {m.n: m for m in model or ()}
    rows = []
    for r in report.rows:
        m = by_n.get(r.n)
        tail = (m.q05, m.q50, m.q95, int(m.in_band)) if m else (math.nan, math.nan, math.nan, "")
        rows.append((r.n, r.mertens, r.ratio_sqrt, r.ratio_loglog, r.ratio_riemann,
                     r.freq_gap_scaled) + tail)
    return rows
