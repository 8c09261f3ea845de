"""Full pipeline: every CSV table plus a pass/fail summary against the pinned tolerances.

Checks that need a larger sieve or walk than the configuration provides are
reported as SKIP and do not count as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import csvio
from .arith import MobiusTable, OmegaTable, mertens_series, mobius_oracle, squarefree_prefix
from .bench import REPORT_HEADER, bench_rows, growth_report, mertens_bound_check, model_vs_actual, running_sups
from .empirical import (P_LIMIT, SQUAREFREE_DENSITY, LimitCDF, cdf_sup_distance, empirical_cdf,
                        frequencies, frequency_prefix, frequency_rows)
from .omega import erdos_kac_check, erdos_kac_rows, omega_histogram, omega_rows
from .walk import checkpoint_summary, clt_check, monte_carlo, walk_sigma

# pinned tolerances
SQUAREFREE_ENVELOPE = 2.0  # |Q(n)/n - 6/pi^2| < C / sqrt(n)
FREQ_TOL = 0.005
SUP_DISTANCE_TOL = 0.005
SUP_MONOTONE_SLACK = 0.002
WALK_MEAN_SE = 4.0
WALK_VAR_REL = 0.05
WALK_KS_TOL = 0.025
LIL_BAND = (0.4, 1.5)
LIL_MIN_FRACTION = 0.95
LANDAU_BAND = (0.9, 1.3)
ERDOS_KAC_TOL = 0.15
ERDOS_KAC_SLACK = 0.01
ORACLE_LIMIT = 10**5


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"


@dataclass
class ReportConfig:
    limit: int = 10**6
    checkpoints: tuple[int, ...] = ()
    steps: int = 10**4
    replicates: int = 10**4
    seed: int = 20240101
    mode: str = "asymptotic"
    xi: float = 0.05
    lil_steps: int = 10**6
    lil_replicates: int = 100
    bench_replicates: int = 200
    omega_limit: int | None = None  # None: same as limit
    workers: int | None = None


@dataclass
class ReportResult:
    files: dict[str, str] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    def summary(self) -> str:
        lines = [REPORT_HEADER, ""]
        lines += [f"{c.status} {c.name}: {c.detail}" for c in self.checks]
        n_fail = sum(c.failed for c in self.checks)
        lines += ["", f"{len(self.checks)} checks, {n_fail} failed"]
        return "\n".join(lines) + "\n"


def geometric_checkpoints(limit: int, start: int = 1000) -> tuple[int, ...]:
    out, n = [], start
    while n <= limit:
        out.append(n)
        n *= 10
    return tuple(out)


def _check(name, ok, detail):
    return Check(name, "PASS" if ok else "FAIL", detail)


def _skip(name, why):
    return Check(name, "SKIP", why)


def arithmetic_checks(mobius: MobiusTable, omega: OmegaTable) -> list[Check]:
    checks = []
    limit = mobius.limit
    series = mertens_series(mobius)

    top = min(limit, ORACLE_LIMIT)
    bad = [n for n in range(1, top + 1) if int(mobius.values[n]) != mobius_oracle(n)]
    checks.append(_check("oracle-equivalence", not bad,
                         f"n <= {top}: {len(bad)} mismatches"))

    q = squarefree_prefix(mobius)
    pts = [n for n in (10**4, 10**5, 10**6) if n <= limit]
    if pts:
        errs = {n: abs(int(q[n]) / n - SQUAREFREE_DENSITY) for n in pts}
        ok = all(errs[n] < SQUAREFREE_ENVELOPE / math.sqrt(n) for n in pts)
        checks.append(_check("squarefree-density", ok,
                             ", ".join(f"n={n}: |Q/n-6/pi^2|={csvio.fmt(e)}" for n, e in errs.items())))
    else:
        checks.append(_skip("squarefree-density", "needs limit >= 10^4"))

    if limit >= 10**6:
        f = frequencies(mobius, 10**6)
        d1, d2 = abs(float(f.nu1) - P_LIMIT), abs(float(f.nu2) - P_LIMIT)
        d3 = abs(float(f.nu3) - (1 - SQUAREFREE_DENSITY))
        checks.append(_check("frequency-limits", max(d1, d2, d3) < FREQ_TOL,
                             f"|nu1-p|={csvio.fmt(d1)}, |nu2-p|={csvio.fmt(d2)}, "
                             f"|nu3-(1-6/pi^2)|={csvio.fmt(d3)}"))
    else:
        checks.append(_skip("frequency-limits", "needs limit >= 10^6"))

    pts = [n for n in (10**3, 10**4, 10**5, 10**6) if n <= limit]
    dists = [cdf_sup_distance(empirical_cdf(frequencies(mobius, n)), LimitCDF()) for n in pts]
    if limit >= 10**6:
        mono = all(b <= a + SUP_MONOTONE_SLACK for a, b in zip(dists, dists[1:]))
        checks.append(_check("theorem1-sup-distance", dists[-1] < SUP_DISTANCE_TOL and mono,
                             ", ".join(f"n={n}: {csvio.fmt(d)}" for n, d in zip(pts, dists))))
    else:
        checks.append(_skip("theorem1-sup-distance", "needs limit >= 10^6"))

    top = min(limit, ORACLE_LIMIT)
    c1, c2 = frequency_prefix(mobius)
    # same denominator n on both sides, so rational equality is integer equality
    ok = bool(np.array_equal(c1[1 : top + 1] - c2[1 : top + 1], series.prefix[1 : top + 1]))
    checks.append(_check("density-identity", ok, f"exact for every n <= {top}"))

    if limit >= 10**6:
        n6 = 10**6
        even1 = omega_histogram(omega, mobius, n6, "even-squarefree")[1]
        odd1 = omega_histogram(omega, mobius, n6, "odd-squarefree")[1]
        scaled = odd1 * math.log(n6) / n6
        ok = even1 == 0 and LANDAU_BAND[0] <= scaled <= LANDAU_BAND[1]
        checks.append(_check("parity-split", ok,
                             f"even squarefree with omega=1: {even1}; odd count*log(n)/n={csvio.fmt(scaled)}"))
    else:
        checks.append(_skip("parity-split", "needs limit >= 10^6"))

    if limit >= 10**6:
        pts = [n for n in (10**5, 10**6, 10**7) if n <= omega.limit]
        ks = [erdos_kac_check(omega, n).distance for n in pts]
        at6 = ks[pts.index(10**6)]
        mono = all(b <= a + ERDOS_KAC_SLACK for a, b in zip(ks, ks[1:]))
        checks.append(_check("erdos-kac", at6 < ERDOS_KAC_TOL and mono,
                             ", ".join(f"n={n}: {csvio.fmt(d)}" for n, d in zip(pts, ks))
                             + f" (tolerance {ERDOS_KAC_TOL} at n=10^6)"))
    else:
        checks.append(_skip("erdos-kac", "needs limit >= 10^6"))

    verdict = mertens_bound_check(series)
    checks.append(_check("mertens-bound", not verdict.violated,
                         f"2 <= n <= {limit}: max |M(n)|/sqrt(n) = {csvio.fmt(verdict.sup)} "
                         f"at n={verdict.argmax}"))
    return checks


def walk_checks(cfg: ReportConfig, ens, lil_ens, table: MobiusTable | None = None) -> list[Check]:
    checks = []
    if ens.replicates >= 100:
        n = ens.steps
        mean = float(ens.terminal.mean())
        var = float(ens.terminal.var())
        target = 2 * P_LIMIT * n
        se = math.sqrt(target / ens.replicates)
        ks = clt_check(ens).distance
        ok = abs(mean) < WALK_MEAN_SE * se and abs(var - target) < WALK_VAR_REL * target and ks < WALK_KS_TOL
        checks.append(_check("theorem2-clt", ok,
                             f"N={n} M={ens.replicates}: mean={csvio.fmt(mean)} (< {csvio.fmt(WALK_MEAN_SE * se)}), "
                             f"var={csvio.fmt(var)} vs 2pN={csvio.fmt(target)}, KS={csvio.fmt(ks)}"))
    else:
        checks.append(_skip("theorem2-clt", "needs at least 100 replicates"))

    if lil_ens is not None:
        inside = int(np.sum((lil_ens.lil >= LIL_BAND[0]) & (lil_ens.lil <= LIL_BAND[1])))
        need = math.ceil(LIL_MIN_FRACTION * lil_ens.replicates)
        checks.append(_check("lil-band", inside >= need,
                             f"N={lil_ens.steps} n0={lil_ens.lil_n0}: {inside}/{lil_ens.replicates} "
                             f"in [{LIL_BAND[0]}, {LIL_BAND[1]}] (need {need})"))
    else:
        checks.append(_skip("lil-band", "needs lil_steps >= 16"))

    n = min(cfg.steps, 1000)
    small = monte_carlo(n, 16, cfg.mode, cfg.seed, table=table, workers=1)
    again = monte_carlo(n, 16, cfg.mode, cfg.seed, table=table, workers=4)
    same = np.array_equal(small.terminal, again.terminal) and np.array_equal(small.lil, again.lil, equal_nan=True)
    checks.append(_check("determinism-workers", same, "ensemble identical for 1 and 4 workers"))
    return checks


def run_report(cfg: ReportConfig, mobius: MobiusTable, omega: OmegaTable) -> ReportResult:
    res = ReportResult()
    series = mertens_series(mobius)
    cps = cfg.checkpoints or geometric_checkpoints(mobius.limit)
    cps = tuple(n for n in cps if n <= mobius.limit)
    res.files["freq.csv"] = csvio.render(csvio.FREQ_HEADER, frequency_rows(mobius, series, cps))
    res.files["omega.csv"] = csvio.render(csvio.OMEGA_HEADER, omega_rows(omega, mobius, cps))
    ek_pts = tuple(n for n in cps if n >= 100)
    res.files["erdos_kac.csv"] = csvio.render(csvio.ERDOS_KAC_HEADER, erdos_kac_rows(omega, ek_pts))

    walk_cps = tuple(n for n in cps if n <= cfg.steps) or (cfg.steps,)
    table = None if cfg.mode == "asymptotic" else mobius
    ens = monte_carlo(cfg.steps, cfg.replicates, cfg.mode, cfg.seed, walk_cps,
                      table=table, workers=cfg.workers)
    res.files["walk_replicates.csv"] = csvio.render(csvio.WALK_REPLICATE_HEADER, walk_replicate_rows(ens))
    res.files["walk_checkpoints.csv"] = csvio.render(csvio.WALK_CHECKPOINT_HEADER, checkpoint_summary(ens))

    lil_ens = None
    if cfg.lil_steps >= 16 and cfg.lil_replicates >= 1:
        lil_ens = monte_carlo(cfg.lil_steps, cfg.lil_replicates, "asymptotic", cfg.seed,
                              lil_n0=min(1000, cfg.lil_steps), workers=cfg.workers)

    bench_cps = tuple(n for n in cps if n >= 16)
    report = growth_report(series, bench_cps, cfg.xi)
    model = None
    if bench_cps:
        bench_ens = monte_carlo(max(bench_cps), cfg.bench_replicates, "asymptotic", cfg.seed + 2,
                                bench_cps, workers=cfg.workers)
        model = model_vs_actual(series, bench_ens, bench_cps)
    res.files["bounds.csv"] = csvio.render(csvio.BOUNDS_HEADER, bench_rows(report, model))

    res.checks += arithmetic_checks(mobius, omega)
    res.checks += walk_checks(cfg, ens, lil_ens, table)
    sups = running_sups(report) if report.rows else []
    res.checks.append(Check("growth-sups", "INFO" if sups else "SKIP",
                            ", ".join(f"{v.bound}={csvio.fmt(v.sup)}@{v.argmax}" for v in sups)
                            or "no checkpoints >= 16"))
    res.files["summary.txt"] = res.summary()
    return res


def walk_replicate_rows(ens):
    z = ens.terminal / walk_sigma(ens.steps)
    return [(r, int(ens.terminal[r]), float(z[r]), float(ens.lil[r])) for r in range(ens.replicates)]
