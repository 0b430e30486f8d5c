"""Maximum-weight independent set on bounded-aspect rectangle graphs.

Rectangles with sides in [1, lambda] are treated as 4-D points
(cx, cy, width, height).  The coreset keeps the max-weight rectangle per
4-D grid cell of diameter 0.16 (any value below 1/6 works): coreset-cell
cohabitants differ by less than the cell side in every coordinate, so
substituting them into an independent set creates overlaps below 1/3 and
the result stays 6-colorable.  Exact coreset solving therefore
6-approximates bounded-diameter inputs, and the shifted driver (square
cells of side k = k' * lambda, contraction inset lambda/2) yields (6+eps).
"""

from __future__ import annotations

import math
import time

import numpy as np

from .errors import LambdaTooSmall, NonPositiveEps, SideOutOfRange
from .exactsolve import (
    DEFAULT_CAP,
    DEFAULT_NODE_BUDGET,
    exact_mwis_rect,
    _greedy_is,
    _MaxISSearch,
)
from .errors import CapExceeded
from .geom import RectSet, Solution
from .shifting import first_per_group, group_ids, sort_groups

RECT_DELTA = 0.16
# Euclidean diagonal of a 4-cube of side s is 2s.
RECT_CELL_SIDE = RECT_DELTA / 2.0

assert RECT_DELTA < 1.0 / 6.0


def rect_coreset(rects) -> list[int]:
    """One max-weight ordinal per non-empty 4-D coreset cell (ties: smallest idx)."""
    rs = RectSet.from_rects(rects)
    n = len(rs)
    if n == 0:
        return []
    keys = [
        np.floor((arr - arr.min()) / RECT_CELL_SIDE).astype(np.int64)
        for arr in (rs.cxs, rs.cys, rs.widths, rs.heights)
    ]
    idx = np.arange(n, dtype=np.int64)
    order = np.lexsort((idx, -rs.ws, keys[3], keys[2], keys[1], keys[0]))
    firsts = first_per_group(*(k[order] for k in keys))
    return sorted(int(i) for i in order[firsts])


def wis_rect_constdiam(rects, budget: int = DEFAULT_NODE_BUDGET,
                       cap: int = DEFAULT_CAP) -> Solution:
    """Exact MWIS of the 4-D coreset: 6-approximate for bounded diameter."""
    rs = RectSet.from_rects(rects)
    q = rect_coreset(rs)
    sub = (
        RectSet(rs.cxs[q], rs.cys[q], rs.widths[q], rs.heights[q], rs.ws[q])
        if q else RectSet([], [], [], [], [])
    )
    sol = exact_mwis_rect(sub, budget=budget, cap=cap)
    indices = [q[i] for i in sol.indices]
    return Solution(
        indices,
        float(rs.ws[indices].sum()) if indices else 0.0,
        "wis-rect",
        {"coreset_size": len(q), "nodes": sol.meta.get("nodes", 0)},
    )


def rect_select_k(eps: float, lam: float) -> tuple[float, int]:
    """Cell side k = k' * lambda with the smallest integer k' >= 2 satisfying
    ((k'-1)/k')^2 >= 6/(6+eps).  Returns (k, k')."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    if lam < 1.0:
        raise LambdaTooSmall(f"lambda must be >= 1, got {lam}")
    kprime = 2
    while ((kprime - 1) / kprime) ** 2 < 6.0 / (6.0 + eps):
        kprime += 1
    return kprime * lam, kprime


def _mwis_rect_local(cxs, cys, widths, heights, ws, budget: int) -> int:
    m = len(cxs)
    if m == 1:
        return 1
    adjc = [1 << i for i in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            if (
                abs(cxs[a] - cxs[b]) < (widths[a] + widths[b]) / 2.0
                and abs(cys[a] - cys[b]) < (heights[a] + heights[b]) / 2.0
            ):
                adjc[a] |= 1 << b
                adjc[b] |= 1 << a
    search = _MaxISSearch(ws, adjc, budget)
    search.seed(*_greedy_is(ws, adjc, search.order))
    search.run((1 << m) - 1)
    return search.best_mask


def wis_rect_shifted(rects, eps: float, lam: float,
                     budget: int = DEFAULT_NODE_BUDGET,
                     cap: int = DEFAULT_CAP) -> Solution:
    """(6+eps)-approximate rectangle MWIS via k'^2 shifted grids.

    Per shift, each grid cell (side k) collects the rectangles whose centers
    lie in its contraction (inset lambda/2); centers assigned to different
    cells are then >= lambda apart along some axis, so per-cell solutions
    union into an independent set.
    """
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    if lam < 1.0:
        raise LambdaTooSmall(f"lambda must be >= 1, got {lam}")
    t0 = time.perf_counter()
    rs = RectSet.from_rects(rects)
    n = len(rs)
    bad = (rs.widths < 1.0) | (rs.widths > lam) | (rs.heights < 1.0) | (rs.heights > lam)
    if bad.any():
        first = int(np.flatnonzero(bad)[0])
        raise SideOutOfRange(
            f"rect {first} has sides {rs.widths[first]} x {rs.heights[first]} "
            f"outside [1, {lam}]"
        )
    k, kprime = rect_select_k(eps, lam)
    meta = {"k": k, "kprime": kprime, "eps": eps, "lambda": lam,
            "shifts_evaluated": kprime * kprime, "best_shift": (0, 0),
            "coreset_points": 0}
    if n == 0:
        meta["elapsed_s"] = time.perf_counter() - t0
        return Solution([], 0.0, "wis-rect", meta)

    ids = np.arange(n, dtype=np.int64)
    half = lam / 2.0
    best_total = -1.0
    best_indices: np.ndarray | None = None
    best_shift = (0, 0)
    coreset_points = 0

    for i in range(kprime):
        tx = rs.cxs - lam * i
        cell_u = np.floor(tx / k).astype(np.int64)
        fx = tx - k * cell_u
        ok_u = (fx >= half) & (fx < k - half)
        for j in range(kprime):
            ty = rs.cys - lam * j
            cell_v = np.floor(ty / k).astype(np.int64)
            fy = ty - k * cell_v
            interior = ok_u & (fy >= half) & (fy < k - half)
            sel = ids[interior]
            if len(sel) == 0:
                total = 0.0
                chosen = np.empty(0, dtype=np.int64)
            else:
                order, starts = sort_groups(cell_u[sel], cell_v[sel])
                pts = sel[order]
                gid = group_ids(starts)
                axes = [rs.cxs[pts], rs.cys[pts], rs.widths[pts], rs.heights[pts]]
                keys = []
                for arr in axes:
                    mins = np.minimum.reduceat(arr, starts[:-1])
                    keys.append(np.floor((arr - mins[gid]) / RECT_CELL_SIDE).astype(np.int64))
                order2 = np.lexsort((pts, -rs.ws[pts], keys[3], keys[2], keys[1], keys[0], gid))
                firsts = first_per_group(gid[order2], *(kk[order2] for kk in keys))
                keep = order2[firsts]
                keep.sort()
                qpts = pts[keep]
                qgid = gid[keep]
                qstarts = np.flatnonzero(np.r_[True, qgid[1:] != qgid[:-1]])
                qstarts = np.append(qstarts, len(qpts)).astype(np.int64)
                coreset_points += len(qpts)
                chosen_parts = []
                for c in range(len(qstarts) - 1):
                    s, e = int(qstarts[c]), int(qstarts[c + 1])
                    if e - s > cap:
                        raise CapExceeded(f"a cell holds {e - s} coreset rects, cap {cap}")
                    members = qpts[s:e]
                    mask = _mwis_rect_local(
                        rs.cxs[members], rs.cys[members],
                        rs.widths[members], rs.heights[members],
                        rs.ws[members], budget,
                    )
                    pos = 0
                    while mask:
                        if mask & 1:
                            chosen_parts.append(int(members[pos]))
                        mask >>= 1
                        pos += 1
                chosen = np.array(sorted(chosen_parts), dtype=np.int64)
                total = float(rs.ws[chosen].sum()) if len(chosen) else 0.0
            if total > best_total:
                best_total = total
                best_indices = chosen
                best_shift = (i, j)

    meta["best_shift"] = best_shift
    meta["coreset_points"] = int(coreset_points)
    meta["elapsed_s"] = time.perf_counter() - t0
    return Solution([int(v) for v in best_indices], max(best_total, 0.0), "wis-rect", meta)
