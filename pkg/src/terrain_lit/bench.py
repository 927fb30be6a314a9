"""Timing runs over growing terrain sizes."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .apex import solve_detailed
from .terrain import generate_random

CSV_COLUMNS = ("n", "time_ms", "sum_list_sizes", "nodes", "pieces")


@dataclass(frozen=True)
class BenchConfig:
    sizes: Tuple[int, ...] = tuple(2**k for k in range(10, 15))
    reps: int = 5
    seed: int = 0
    profile: str = "spiky"


@dataclass
class BenchRow:
    n: int
    time_ms: float  # median over repetitions
    sum_list_sizes: int
    nodes: int
    pieces: int
    times_ms: List[float] = field(default_factory=list)

    def as_csv(self) -> Tuple:
        return self.n, f"{self.time_ms:.3f}", self.sum_list_sizes, self.nodes, self.pieces


def bench(cfg: BenchConfig) -> List[BenchRow]:
    """One terrain per size (seeded), solved ``reps`` times; the median time is reported."""
    rows = []
    for n in sorted(cfg.sizes):
        t = generate_random(n, cfg.seed, cfg.profile)
        times = []
        stats = {}
        for _ in range(max(1, cfg.reps)):
            t.__dict__.pop("_sweeps", None)  # cached sweeps would skew repeat timings
            t.__dict__.pop("_int_frame", None)
            start = time.perf_counter()
            rep = solve_detailed(t)
            times.append((time.perf_counter() - start) * 1000)
            stats = rep.stats
        rows.append(
            BenchRow(
                n,
                statistics.median(times),
                stats.get("sum_list_sizes", 0),
                stats.get("nodes", 0),
                stats.get("pieces", 0),
                times,
            )
        )
    return rows


def to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()


def loglog_slope(ns: Sequence[float], ts: Sequence[float]) -> float:
    """Least-squares slope of log t against log n."""
    xs = [math.log(v) for v in ns]
    ys = [math.log(v) for v in ts]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def normalized_list_sizes(rows: Sequence[BenchRow]) -> List[float]:
    """sum_list_sizes / (n log2 n) per row."""
    return [r.sum_list_sizes / (r.n * math.log2(r.n)) for r in rows]
