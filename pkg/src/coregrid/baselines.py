"""Greedy reference heuristics, for benchmark comparison only."""

from __future__ import annotations

import math
import time

import numpy as np

from .geom import PointSet, Solution


def _grid_key(x: float, y: float) -> tuple[int, int]:
    return (int(math.floor(x / 2.0)), int(math.floor(y / 2.0)))


def greedy_wis_udg(points) -> Solution:
    """Scan by decreasing weight (ties: smallest index); keep what stays
    independent of the points kept so far.  Output is maximal."""
    t0 = time.perf_counter()
    ps = PointSet.from_points(points)
    n = len(ps)
    order = np.lexsort((np.arange(n), -ps.ws))
    kept: dict[tuple[int, int], list[int]] = {}
    chosen = []
    xs, ys = ps.xs, ps.ys
    for p in order:
        p = int(p)
        x, y = xs[p], ys[p]
        u, v = _grid_key(x, y)
        independent = True
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                for q in kept.get((u + du, v + dv), ()):
                    dx = x - xs[q]
                    dy = y - ys[q]
                    if dx * dx + dy * dy <= 4.0:
                        independent = False
                        break
                if not independent:
                    break
            if not independent:
                break
        if independent:
            kept.setdefault((u, v), []).append(p)
            chosen.append(p)
    chosen.sort()
    return Solution(chosen, float(ps.ws[chosen].sum()) if chosen else 0.0,
                    "wis-udg", {"elapsed_s": time.perf_counter() - t0})


def greedy_ds_udg(points) -> Solution:
    """Scan in input order; add a point iff it is not yet dominated."""
    t0 = time.perf_counter()
    ps = PointSet.from_points(points)
    n = len(ps)
    xs, ys = ps.xs, ps.ys
    buckets: dict[tuple[int, int], list[int]] = {}
    for p in range(n):
        buckets.setdefault(_grid_key(xs[p], ys[p]), []).append(p)
    dominated = np.zeros(n, dtype=bool)
    chosen = []
    for p in range(n):
        if dominated[p]:
            continue
        chosen.append(p)
        x, y = xs[p], ys[p]
        u, v = _grid_key(x, y)
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                for q in buckets.get((u + du, v + dv), ()):
                    if not dominated[q]:
                        dx = x - xs[q]
                        dy = y - ys[q]
                        if dx * dx + dy * dy <= 4.0:
                            dominated[q] = True
    return Solution(chosen, float(len(chosen)), "ds-udg",
                    {"elapsed_s": time.perf_counter() - t0})
