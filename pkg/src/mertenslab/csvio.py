"""CSV emission: comma separated, mandatory header, LF endings, reals to 12 significant digits."""

from __future__ import annotations

import csv
import io
import math
import os
from pathlib import Path

import numpy as np

FREQ_HEADER = ("n", "nu1", "nu2", "nu3", "mertens", "sup_distance")
OMEGA_HEADER = ("n", "k", "empirical_freq", "landau", "poisson")
ERDOS_KAC_HEADER = ("n", "ks_distance")
WALK_REPLICATE_HEADER = ("replicate", "S_N", "standardized", "lil_stat")
WALK_CHECKPOINT_HEADER = ("checkpoint_n", "mean", "variance", "ks_distance")
WALK_PATH_HEADER = ("n", "S_n")
BOUNDS_HEADER = ("n", "mertens", "ratio_sqrt", "ratio_loglog", "ratio_riemann",
                 "freq_gap_scaled", "model_q05", "model_q50", "model_q95", "in_band")


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        out = format(value, ".12g")
        return "0" if out == "-0" else out
    return str(value)


def render(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row {row!r} does not match header {header!r}")
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def atomic_write(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp")
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv(path, header, rows) -> None:
    atomic_write(path, render(header, rows))
