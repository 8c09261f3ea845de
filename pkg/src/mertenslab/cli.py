"""Command-line front end.

Subcommands: sieve, freq, omega, walk, bounds, report.  Settings come from
built-in defaults, then an optional JSON file (``--config``), then flags;
later sources win.  Environment variables are never read.

Exit codes::

    0  success
    2  invalid configuration
    3  bounds error (limit, index or budget out of range)
    4  one or more tolerance checks failed (report)
    5  a required input is missing
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import csvio
from .arith import (DEFAULT_MAX_LIMIT, BoundsError, CacheFormatError, MobiusTable, mertens_series,
                    read_table, sieve_mobius, sieve_omega, squarefree_count, write_table)
from .bench import REPORT_HEADER, bench_rows, growth_report, model_vs_actual, running_sups
from .empirical import frequency_rows
from .omega import FILTERS, erdos_kac_rows, omega_rows
from .report import ReportConfig, geometric_checkpoints, run_report, walk_replicate_rows
from .walk import MODES, BudgetError, checkpoint_summary, monte_carlo

log = logging.getLogger("mertenslab")

EXIT_OK, EXIT_CONFIG, EXIT_BOUNDS, EXIT_TOLERANCE, EXIT_MISSING = 0, 2, 3, 4, 5
DEFAULT_LIMIT = 10**6
COMMANDS = ("sieve", "freq", "omega", "walk", "bounds", "report")


class ConfigError(ValueError):
    pass


class MissingInputError(FileNotFoundError):
    pass


@dataclass
class RunConfig:
    command: str = "report"
    limit: int | None = None  # None: largest checkpoint, else DEFAULT_LIMIT
    checkpoints: tuple[int, ...] = ()
    steps: int = 10**4
    replicates: int | None = None  # per-command default
    seed: int = 20240101
    mode: str = "asymptotic"
    xi: float = 0.05
    out: str = "out"
    cache_dir: str | None = ".mertenslab_cache"
    require_cache: bool = False
    max_limit: int = DEFAULT_MAX_LIMIT
    workers: int | None = None
    filter: str = "all"
    lil_steps: int = 10**6
    lil_replicates: int = 100
    omega_limit: int | None = None

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.mode not in MODES:
            raise ConfigError(f"--mode must be one of {MODES}, got {self.mode!r}")
        if self.filter not in FILTERS:
            raise ConfigError(f"--filter must be one of {FILTERS}, got {self.filter!r}")
        for name in ("limit", "steps", "max_limit", "lil_steps"):
            v = getattr(self, name)
            if v is None and name == "limit":
                continue
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"{name} must be an integer, got {v!r}")
        if self.replicates is not None and (not isinstance(self.replicates, int) or self.replicates < 1):
            raise ConfigError(f"replicates must be a positive integer, got {self.replicates!r}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if not 0 < float(self.xi) < 0.5:
            raise ConfigError(f"xi must lie in (0, 0.5), got {self.xi}")
        if not isinstance(self.seed, int) or self.seed < 0 or self.seed >= 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if any(not isinstance(c, int) or c < 1 for c in self.checkpoints):
            raise ConfigError(f"checkpoints must be positive integers, got {self.checkpoints!r}")
        return self


def parse_checkpoints(text: str) -> tuple[int, ...]:
    try:
        vals = [int(float(t)) if "e" in t.lower() else int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad checkpoint list {text!r}") from None
    return tuple(sorted(set(vals)))


def _int(text: str) -> int:
    # accept 1e6 style as well as plain integers
    try:
        return int(text)
    except ValueError:
        f = float(text)
        if f != int(f):
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        return int(f)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of settings; flags override it")
    common.add_argument("--limit", type=_int)
    common.add_argument("--checkpoints", type=parse_checkpoints, help="comma separated, e.g. 1e3,1e4,1e5")
    common.add_argument("--steps", type=_int)
    common.add_argument("--replicates", type=_int)
    common.add_argument("--seed", type=_int)
    common.add_argument("--mode", choices=MODES)
    common.add_argument("--xi", type=float)
    common.add_argument("--out")
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--no-cache", dest="cache_dir", action="store_const", const="")
    common.add_argument("--require-cache", action="store_const", const=True)
    common.add_argument("--max-limit", type=_int)
    common.add_argument("--workers", type=_int)
    common.add_argument("--filter", choices=FILTERS)
    common.add_argument("--lil-steps", type=_int)
    common.add_argument("--lil-replicates", type=_int)
    common.add_argument("--omega-limit", type=_int)

    parser = argparse.ArgumentParser(prog="mertenslab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(argv=None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    settings = {}
    if args.get("config"):
        path = Path(args["config"])
        if not path.exists():
            raise MissingInputError(f"config file not found: {path}")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        unknown = set(data) - fields
        if unknown:
            raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
        if "checkpoints" in data:
            data["checkpoints"] = tuple(sorted({int(c) for c in data["checkpoints"]}))
        settings.update(data)
    settings.update({k: v for k, v in args.items() if k in fields and v is not None})
    if settings.get("cache_dir") == "":
        settings["cache_dir"] = None
    return RunConfig(**settings).validate()


# --- table loading ----------------------------------------------------------

def cache_path(cache_dir, limit) -> Path:
    return Path(cache_dir) / f"mobius_{limit}.mobi"


def load_or_build(cfg: RunConfig, limit: int) -> MobiusTable:
    """Reuse a valid cached table, otherwise sieve and (re)write the cache."""
    if limit > cfg.max_limit or limit < 1:
        raise BoundsError(f"limit {limit} outside [1, {cfg.max_limit}]")
    if cfg.cache_dir is None:
        if cfg.require_cache:
            raise MissingInputError("--require-cache given without a cache directory")
        return sieve_mobius(limit, workers=cfg.workers, max_limit=cfg.max_limit)
    path = cache_path(cfg.cache_dir, limit)
    if path.exists():
        try:
            table = read_table(path, cfg.max_limit)
            if table.limit == limit:
                return table
            log.warning("cache %s holds limit %d, expected %d; regenerating", path, table.limit, limit)
        except CacheFormatError as exc:
            log.warning("corrupt cache (%s); regenerating", exc)
    elif cfg.require_cache:
        raise MissingInputError(f"missing Möbius cache file: {path}")
    table = sieve_mobius(limit, workers=cfg.workers, max_limit=cfg.max_limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_table(table, path)
    return table


def _checkpoints(cfg: RunConfig, top: int, start: int = 1000) -> tuple[int, ...]:
    if cfg.checkpoints:
        bad = [c for c in cfg.checkpoints if c > top]
        if bad:
            raise BoundsError(f"checkpoints {bad} exceed {top}")
        return cfg.checkpoints
    return geometric_checkpoints(top, start) or (top,)


def _table_limit(cfg: RunConfig) -> int:
    """--limit if given, else the largest checkpoint, else 10**6."""
    if cfg.limit is not None:
        return cfg.limit
    return max(cfg.checkpoints) if cfg.checkpoints else DEFAULT_LIMIT


def _emit(out_dir, files: dict[str, str]) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        csvio.atomic_write(out / name, text)


# --- commands ---------------------------------------------------------------

def cmd_sieve(cfg: RunConfig) -> int:
    table = load_or_build(cfg, _table_limit(cfg))
    m = int(mertens_series(table).prefix[-1])
    q = squarefree_count(table, table.limit).q
    print(f"limit={table.limit} Q(n)={q} M(n)={m}")
    return EXIT_OK


def cmd_freq(cfg: RunConfig) -> int:
    limit = _table_limit(cfg)
    cps = _checkpoints(cfg, limit)
    table = load_or_build(cfg, limit)
    rows = frequency_rows(table, mertens_series(table), cps)
    _emit(cfg.out, {"freq.csv": csvio.render(csvio.FREQ_HEADER, rows)})
    return EXIT_OK


def cmd_omega(cfg: RunConfig) -> int:
    limit = _table_limit(cfg)
    cps = _checkpoints(cfg, limit)
    table = load_or_build(cfg, limit) if cfg.filter != "all" else None
    omega = sieve_omega(limit, workers=cfg.workers, max_limit=cfg.max_limit)
    files = {
        "omega.csv": csvio.render(csvio.OMEGA_HEADER, omega_rows(omega, table, [c for c in cps if c >= 3], cfg.filter)),
        "erdos_kac.csv": csvio.render(csvio.ERDOS_KAC_HEADER, erdos_kac_rows(omega, [c for c in cps if c >= 100])),
    }
    _emit(cfg.out, files)
    return EXIT_OK


def cmd_walk(cfg: RunConfig) -> int:
    replicates = cfg.replicates or 10**4
    if cfg.checkpoints:
        cps = _checkpoints(cfg, cfg.steps)
    else:
        cps = tuple(sorted(set(geometric_checkpoints(cfg.steps, 10)) | {cfg.steps}))
    table = None if cfg.mode == "asymptotic" else load_or_build(cfg, max(cfg.limit or 0, cfg.steps))
    ens = monte_carlo(cfg.steps, replicates, cfg.mode, cfg.seed, cps, table=table,
                      workers=cfg.workers, keep_first_path=replicates == 1)
    files = {
        "walk_replicates.csv": csvio.render(csvio.WALK_REPLICATE_HEADER, walk_replicate_rows(ens)),
        "walk_checkpoints.csv": csvio.render(csvio.WALK_CHECKPOINT_HEADER, checkpoint_summary(ens)),
    }
    if ens.first_path is not None:
        path = ens.first_path.values
        files["walk_path.csv"] = csvio.render(csvio.WALK_PATH_HEADER, [(n, int(s)) for n, s in enumerate(path)])
    _emit(cfg.out, files)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    limit = _table_limit(cfg)
    cps = tuple(c for c in _checkpoints(cfg, limit) if c >= 16)
    if not cps:
        raise BoundsError("bounds needs at least one checkpoint >= 16")
    table = load_or_build(cfg, limit)
    series = mertens_series(table)
    report = growth_report(series, cps, cfg.xi)
    ens = monte_carlo(max(cps), cfg.replicates or 200, "asymptotic", cfg.seed, cps, workers=cfg.workers)
    model = model_vs_actual(series, ens, cps)
    _emit(cfg.out, {"bounds.csv": csvio.render(csvio.BOUNDS_HEADER, bench_rows(report, model))})
    print(REPORT_HEADER)
    for v in running_sups(report):
        print(f"{v.bound}: observed sup {csvio.fmt(v.sup)} at n={v.argmax}")
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    rcfg = ReportConfig(
        limit=_table_limit(cfg), checkpoints=cfg.checkpoints, steps=cfg.steps,
        replicates=cfg.replicates or 10**4, seed=cfg.seed, mode=cfg.mode, xi=cfg.xi,
        lil_steps=cfg.lil_steps, lil_replicates=cfg.lil_replicates, workers=cfg.workers,
        omega_limit=cfg.omega_limit,
    )
    limit = _table_limit(cfg)
    if cfg.mode != "asymptotic":
        limit = max(limit, cfg.steps)
    table = load_or_build(cfg, limit)
    omega = sieve_omega(max(limit, cfg.omega_limit or 0), workers=cfg.workers, max_limit=cfg.max_limit)
    result = run_report(rcfg, table, omega)
    _emit(cfg.out, result.files)
    sys.stdout.write(result.files["summary.txt"])
    return EXIT_OK if result.passed else EXIT_TOLERANCE


HANDLERS = {
    "sieve": cmd_sieve, "freq": cmd_freq, "omega": cmd_omega,
    "walk": cmd_walk, "bounds": cmd_bounds, "report": cmd_report,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = resolve_config(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MissingInputError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except SystemExit as exc:  # argparse
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return HANDLERS[cfg.command](cfg)
    except (BoundsError, BudgetError) as exc:
        print(f"bounds error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except MissingInputError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING


if __name__ == "__main__":
    sys.exit(main())
