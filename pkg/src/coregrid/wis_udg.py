"""Maximum-weight independent set on unit disk graphs.

Two solvers:

* :func:`wis_constdiam` — for constant-diameter inputs: keep only the
  max-weight point per small grid cell (cell diagonal 0.29) and solve that
  coreset exactly; a 4-approximation.
* :func:`wis_shifted` — for arbitrary inputs: evaluate k^2 translated grids
  of cell side 2k, solve each cell's contraction with the constant-diameter
  solver, and keep the best combined solution; a (4+eps)-approximation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import cells
from .errors import NonPositiveEps
from .exactsolve import DEFAULT_CAP, DEFAULT_NODE_BUDGET, exact_mwis_udg
from .geom import PointSet, Solution
from .shifting import (
    first_per_group,
    group_ids,
    max_weight_per_subcell,
    sort_groups,
    subcell_keys,
)

# Cell diagonal of the coreset grid.  The constant-diameter argument needs
# any value below (2 - sqrt(2)) / 2.
WIS_GAMMA = 0.29
WIS_CELL_SIDE = WIS_GAMMA / math.sqrt(2.0)

assert WIS_GAMMA < (2.0 - math.sqrt(2.0)) / 2.0


def wis_select_k(eps: float) -> int:
    """Smallest grid parameter k >= 3 with ((k-2)/k)^2 >= 4/(4+eps)."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    k = 3
    while ((k - 2) / k) ** 2 < 4.0 / (4.0 + eps):
        k += 1
    return k


@dataclass
class ShiftPlan:
    """Grid parameter and the k^2 shift roots used by the shifted driver."""

    k: int
    eps: float
    cell_side: float = field(init=False)
    offsets: list[tuple[float, float]] = field(init=False)

    def __post_init__(self):
        self.cell_side = 2.0 * self.k
        self.offsets = [
            (2.0 * i, 2.0 * j) for i in range(self.k) for j in range(self.k)
        ]


def make_shift_plan(eps: float) -> ShiftPlan:
    return ShiftPlan(wis_select_k(eps), eps)


def wis_coreset(points) -> list[int]:
    """One max-weight ordinal per non-empty coreset cell (ties: smallest idx).

    The grid has cells of side 0.29/sqrt(2) rooted at the bounding-box corner.
    """
    ps = PointSet.from_points(points)
    n = len(ps)
    if n == 0:
        return []
    gu = np.floor((ps.xs - ps.xs.min()) / WIS_CELL_SIDE).astype(np.int64)
    gv = np.floor((ps.ys - ps.ys.min()) / WIS_CELL_SIDE).astype(np.int64)
    idx = np.arange(n, dtype=np.int64)
    order = np.lexsort((idx, -ps.ws, gv, gu))
    firsts = first_per_group(gu[order], gv[order])
    return sorted(int(i) for i in order[firsts])


def wis_constdiam(points, budget: int = DEFAULT_NODE_BUDGET, cap: int = DEFAULT_CAP) -> Solution:
    """Exact MWIS of the coreset: a 4-approximation for bounded-diameter inputs."""
    ps = PointSet.from_points(points)
    q = wis_coreset(ps)
    sub = PointSet(ps.xs[q], ps.ys[q], ps.ws[q]) if q else PointSet([], [], [])
    sol = exact_mwis_udg(sub, budget=budget, cap=cap)
    indices = [q[i] for i in sol.indices]
    return Solution(
        indices,
        float(ps.ws[indices].sum()) if indices else 0.0,
        "wis-udg",
        {"coreset_size": len(q), "nodes": sol.meta.get("nodes", 0)},
    )


def wis_shifted(points, eps: float, budget: int = DEFAULT_NODE_BUDGET,
                cap: int = DEFAULT_CAP, fast: bool | None = None) -> Solution:
    """(4+eps)-approximate MWIS via k^2 shifted grids.

    For each shift (2i, 2j) the points falling in cell contractions (cells
    inset by 2 on every side) are partitioned per cell, each cell is solved
    by the constant-diameter coreset solver, and the per-cell solutions are
    unioned; the heaviest union over all shifts wins (ties: smallest (i, j)).
    """
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    t0 = time.perf_counter()
    k = wis_select_k(eps)
    ps = PointSet.from_points(points)
    n = len(ps)
    meta = {"k": k, "eps": eps, "shifts_evaluated": k * k, "best_shift": (0, 0),
            "coreset_points": 0}
    if n == 0:
        meta["elapsed_s"] = time.perf_counter() - t0
        return Solution([], 0.0, "wis-udg", meta)

    su, sv = subcell_keys(ps.xs, ps.ys)
    ids = np.arange(n, dtype=np.int64)
    best_total = -1.0
    best_indices: np.ndarray | None = None
    best_shift = (0, 0)
    coreset_points = 0

    for i in range(k):
        du = su - i
        cu = du % k
        cell_u = du // k
        ok_u = (cu >= 1) & (cu <= k - 2)
        for j in range(k):
            dv = sv - j
            cv = dv % k
            cell_v = dv // k
            interior = ok_u & (cv >= 1) & (cv <= k - 2)
            sel = ids[interior]
            if len(sel) == 0:
                total = 0.0
                chosen = np.empty(0, dtype=np.int64)
            else:
                order, starts = sort_groups(cell_u[sel], cell_v[sel])
                pts = sel[order]
                xs = ps.xs[pts]
                ys = ps.ys[pts]
                gid = group_ids(starts)
                # Coreset grid per cell, rooted at the cell's bounding-box corner.
                minx = np.minimum.reduceat(xs, starts[:-1])
                miny = np.minimum.reduceat(ys, starts[:-1])
                gu = np.floor((xs - minx[gid]) / WIS_CELL_SIDE).astype(np.int64)
                gv = np.floor((ys - miny[gid]) / WIS_CELL_SIDE).astype(np.int64)
                keep = max_weight_per_subcell(gid, gu, gv, ps.ws[pts], pts)
                keep.sort()  # restore (cell, original index) order
                qpts = pts[keep]
                qgid = gid[keep]
                qstarts = np.flatnonzero(
                    np.r_[True, qgid[1:] != qgid[:-1]]
                )
                qstarts = np.append(qstarts, len(qpts)).astype(np.int64)
                coreset_points += len(qpts)
                chosen_mask = cells.solve_mwis_cells(
                    ps.xs[qpts], ps.ys[qpts], ps.ws[qpts], qstarts,
                    budget=budget, cap=cap, fast=fast,
                )
                chosen = qpts[chosen_mask]
                chosen.sort()
                total = float(ps.ws[chosen].sum())
            if total > best_total:
                best_total = total
                best_indices = chosen
                best_shift = (i, j)

    meta["best_shift"] = best_shift
    meta["coreset_points"] = int(coreset_points)
    meta["elapsed_s"] = time.perf_counter() - t0
    return Solution(
        [int(v) for v in best_indices],
        max(best_total, 0.0),
        "wis-udg",
        meta,
    )


def contraction_count(x: float, y: float, k: int) -> int:
    """Number of shifts (i, j) whose cell contraction contains (x, y).

    For points not on a subcell boundary this is exactly (k-2)^2.
    """
    su = math.floor(x / 2.0)
    sv = math.floor(y / 2.0)
    count = 0
    for i in range(k):
        for j in range(k):
            if 1 <= (su - i) % k <= k - 2 and 1 <= (sv - j) % k <= k - 2:
                count += 1
    return count
