"""Mean and standard error across seeds, per domain and method."""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .run import read_curve


class GridMismatchError(ValueError):
    pass


@dataclass
class SeriesPoint:
    steps: int
    mean: float
    se: float
    n: int
    single_run: bool  # se is reported as 0 when only one run exists


@dataclass
class Series:
    domain: str
    method: str
    seeds: list[int]
    points: list[SeriesPoint]


def find_runs(paths: Iterable[Union[str, Path]]) -> list[Path]:
    """Run directories (holding ``manifest.json``) at or below each path."""
    out = []
    for p in map(Path, paths):
        if (p / "manifest.json").exists():
            out.append(p)
        elif p.is_dir():
            out.extend(sorted(m.parent for m in p.rglob("manifest.json")))
        else:
            raise FileNotFoundError(f"no run directory at {p}")
    return sorted(set(out))


def mean_se(values: list[float]) -> tuple[float, float]:
    m = statistics.fmean(values)
    if len(values) < 2:
        return m, 0.0
    return m, statistics.stdev(values) / math.sqrt(len(values))


def aggregate(paths: Iterable[Union[str, Path]]) -> list[Series]:
    groups: dict[tuple[str, str], list[tuple[int, list]]] = {}
    for d in find_runs(paths):
        cfg = json.loads((d / "manifest.json").read_text())["config"]
        groups.setdefault((cfg["domain"], cfg["method"]), []).append(
            (cfg["seed"], read_curve(d / "curve.csv")))
    if not groups:
        raise FileNotFoundError("no runs found")
    out = []
    for (domain, method), runs in sorted(groups.items()):
        runs.sort(key=lambda r: r[0])
        grid = [row[0] for row in runs[0][1]]
        for seed, curve in runs[1:]:
            if [row[0] for row in curve] != grid:
                raise GridMismatchError(
                    f"{domain}/{method}: seed {seed} evaluated at different steps than seed {runs[0][0]}")
        points = []
        for i, steps in enumerate(grid):
            m, se = mean_se([curve[i][1] for _, curve in runs])
            points.append(SeriesPoint(steps, m, se, len(runs), len(runs) == 1))
        out.append(Series(domain, method, [s for s, _ in runs], points))
    return out


def summary_csv(series: list[Series]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["domain", "method", "steps", "mean", "se", "n", "single_run"])
    for s in series:
        for p in s.points:
            w.writerow([s.domain, s.method, p.steps, f"{p.mean:.6f}", f"{p.se:.6f}", p.n, int(p.single_run)])
    return buf.getvalue()


def write_aggregate(series: list[Series], out: Union[str, Path]) -> Path:
    """``summary.csv`` plus one plot-ready file per (domain, method)."""
    out = Path(out)
    (out / "series").mkdir(parents=True, exist_ok=True)
    (out / "summary.csv").write_text(summary_csv(series))
    for s in series:
        lines = ["steps,mean,se"] + [f"{p.steps},{p.mean:.6f},{p.se:.6f}" for p in s.points]
        (out / "series" / f"{s.domain}__{s.method}.csv").write_text("\n".join(lines) + "\n")
    return out
