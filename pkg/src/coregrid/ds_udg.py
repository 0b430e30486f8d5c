"""Minimum (partial) dominating set on unit disk graphs.

The coreset keeps, per small grid cell (cell diagonal 0.24), only the at
most four points of extreme coordinate; solving the cover problem exactly
on that coreset 4-approximates the optimum for bounded-diameter inputs.
The shifted driver turns this into a (4+eps)-approximation: per grid cell C
it dominates the targets owned by C using candidates from the expansion C+
(C grown by 2 in L-infinity), then unions the per-cell answers and keeps
the smallest union over all k^2 shifts.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import cells
from .errors import NonPositiveEps, NonPositiveGamma
from .exactsolve import DEFAULT_CAP, DEFAULT_NODE_BUDGET, exact_min_pds
from .geom import PointSet, Solution
from .shifting import group_ids, sort_groups, subcell_keys

DS_GAMMA = 0.24
DS_CELL_SIDE = DS_GAMMA / math.sqrt(2.0)


def check_ds_gamma(gamma: float) -> bool:
    """Whether a coreset-cell diameter keeps the extreme-point argument valid."""
    if gamma <= 0:
        raise NonPositiveGamma(f"gamma must be > 0, got {gamma}")
    arc = (math.pi / 2.0 + 2.0 * math.asin(gamma / 2.0)) / 2.0
    return gamma + math.sqrt(8.0 - 8.0 * math.cos(arc)) < 2.0


assert check_ds_gamma(DS_GAMMA)


@dataclass
class PdsInstance:
    """Point set plus the ordinals that actually have to be dominated."""

    points: PointSet
    targets: list[int] = field(default_factory=list)

    @classmethod
    def full(cls, points) -> "PdsInstance":
        ps = PointSet.from_points(points)
        return cls(ps, list(range(len(ps))))


def _extreme_positions(gid, gu, gv, xs, ys, tiebreak) -> np.ndarray:
    """Positions of min-x/max-x/min-y/max-y per (group, subcell) bucket.

    Coordinate ties within a bucket keep the smallest tiebreak value.
    """
    n = len(gid)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    order = np.lexsort((tiebreak, gv, gu, gid))
    change = np.zeros(n, dtype=bool)
    change[0] = True
    for key in (gid[order], gu[order], gv[order]):
        change[1:] |= key[1:] != key[:-1]
    starts = np.flatnonzero(change)
    bucket = np.cumsum(change) - 1
    picks = []
    for arr, reducer in ((xs, np.minimum), (xs, np.maximum),
                         (ys, np.minimum), (ys, np.maximum)):
        a = arr[order]
        ext = reducer.reduceat(a, starts)
        pos = np.flatnonzero(a == ext[bucket])
        # Buckets appear in sorted runs; the first hit per bucket carries
        # the smallest tiebreak among the extremes.
        b = bucket[pos]
        first = np.zeros(len(pos), dtype=bool)
        first[0] = True
        first[1:] = b[1:] != b[:-1]
        picks.append(order[pos[first]])
    return np.unique(np.concatenate(picks))


def ds_coreset(points) -> list[int]:
    """Ordinals of the extreme points of each non-empty coreset cell.

    At most four survive per cell; coordinate ties keep the smallest index.
    """
    ps = PointSet.from_points(points)
    n = len(ps)
    if n == 0:
        return []
    gu = np.floor((ps.xs - ps.xs.min()) / DS_CELL_SIDE).astype(np.int64)
    gv = np.floor((ps.ys - ps.ys.min()) / DS_CELL_SIDE).astype(np.int64)
    idx = np.arange(n, dtype=np.int64)
    gid = np.zeros(n, dtype=np.int64)
    keep = _extreme_positions(gid, gu, gv, ps.xs, ps.ys, idx)
    return sorted(int(i) for i in keep)


def pds_constdiam(inst: PdsInstance, budget: int = DEFAULT_NODE_BUDGET,
                  cap: int = DEFAULT_CAP) -> Solution:
    """Exact cover on the coreset: a 4-approximation for bounded diameter."""
    ps = inst.points
    targets = sorted(inst.targets)
    if not targets:
        return Solution([], 0.0, "pds-udg", {"coreset_size": 0})
    q = ds_coreset(ps)
    sub = PointSet(ps.xs[q], ps.ys[q], ps.ws[q])
    tgt = PointSet(ps.xs[targets], ps.ys[targets], ps.ws[targets])
    sol = exact_min_pds(sub, tgt, budget=budget, cap=cap)
    indices = sorted(q[i] for i in sol.indices)
    return Solution(indices, float(len(indices)), "pds-udg",
                    {"coreset_size": len(q), "nodes": sol.meta.get("nodes", 0)})


def pds_select_k(eps: float) -> int:
    """Smallest grid parameter k >= 2 with ((k+2)/k)^2 <= 1 + eps/4."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    k = 2
    while ((k + 2) / k) ** 2 > 1.0 + eps / 4.0:
        k += 1
    return k


def _expansion_incidences(su, sv, i: int, j: int, k: int):
    """(point position, cell_u, cell_v) triples for every cell whose
    expansion contains each point: the owning cell, plus neighbors when the
    point sits on the first or last subcell of its cell."""
    du = su - i
    dv = sv - j
    base_u = du // k
    base_v = dv // k
    cu = du % k
    cv = dv % k
    n = len(su)
    ids = np.arange(n, dtype=np.int64)
    lo_u = cu == 0
    hi_u = cu == k - 1
    lo_v = cv == 0
    hi_v = cv == k - 1
    parts_id = [ids]
    parts_u = [base_u]
    parts_v = [base_v]
    for mask_u, off_u in ((None, 0), (lo_u, -1), (hi_u, 1)):
        for mask_v, off_v in ((None, 0), (lo_v, -1), (hi_v, 1)):
            if off_u == 0 and off_v == 0:
                continue
            if mask_u is None:
                m = mask_v
            elif mask_v is None:
                m = mask_u
            else:
                m = mask_u & mask_v
            sel = ids[m]
            if len(sel) == 0:
                continue
            parts_id.append(sel)
            parts_u.append(base_u[sel] + off_u)
            parts_v.append(base_v[sel] + off_v)
    return (
        np.concatenate(parts_id),
        np.concatenate(parts_u),
        np.concatenate(parts_v),
        base_u,
        base_v,
    )


def pds_shifted(inst: PdsInstance, eps: float, budget: int = DEFAULT_NODE_BUDGET,
                cap: int = DEFAULT_CAP, fast: bool | None = None) -> Solution:
    """(4+eps)-approximate minimum partial dominating set via shifted grids."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    t0 = time.perf_counter()
    k = pds_select_k(eps)
    ps = inst.points
    targets = np.array(sorted(inst.targets), dtype=np.int64)
    meta = {"k": k, "eps": eps, "shifts_evaluated": k * k, "best_shift": (0, 0),
            "coreset_points": 0}
    if len(targets) == 0:
        meta["elapsed_s"] = time.perf_counter() - t0
        return Solution([], 0.0, "pds-udg", meta)

    su, sv = subcell_keys(ps.xs, ps.ys)
    best_size = None
    best_indices: np.ndarray | None = None
    best_shift = (0, 0)
    coreset_points = 0

    for i in range(k):
        for j in range(k):
            cand_ids, cku, ckv, base_u, base_v = _expansion_incidences(su, sv, i, j, k)
            # Targets keyed by the cell that owns them.
            tku = base_u[targets]
            tkv = base_v[targets]
            t_order, t_starts = sort_groups(tku, tkv)
            t_sorted = targets[t_order]
            t_keys_u = tku[t_order][t_starts[:-1]]
            t_keys_v = tkv[t_order][t_starts[:-1]]
            # Candidates keyed by every cell whose expansion holds them.
            c_order, c_starts = sort_groups(cku, ckv, tiebreak=cand_ids)
            c_keys_u = cku[c_order][c_starts[:-1]]
            c_keys_v = ckv[c_order][c_starts[:-1]]
            # Walk both group lists (same (u, v) ascending order); every
            # target cell has a candidate group since its own points are
            # candidates for it.
            cand_slices = []
            tgt_slices = []
            ci = 0
            ncg = len(c_keys_u)
            for tg in range(len(t_keys_u)):
                tu, tv = t_keys_u[tg], t_keys_v[tg]
                while ci < ncg and (c_keys_u[ci], c_keys_v[ci]) < (tu, tv):
                    ci += 1
                assert ci < ncg and (c_keys_u[ci], c_keys_v[ci]) == (tu, tv)
                cand_slices.append(c_order[c_starts[ci]:c_starts[ci + 1]])
                tgt_slices.append((int(t_starts[tg]), int(t_starts[tg + 1])))
            cand_concat = np.concatenate(cand_slices)
            cand_pts = cand_ids[cand_concat]
            cstarts = np.zeros(len(cand_slices) + 1, dtype=np.int64)
            np.cumsum([len(s) for s in cand_slices], out=cstarts[1:])
            gid = group_ids(cstarts)
            # Coreset: extreme points per small subcell inside each cell.
            cxs = ps.xs[cand_pts]
            cys = ps.ys[cand_pts]
            minx = np.minimum.reduceat(cxs, cstarts[:-1])
            miny = np.minimum.reduceat(cys, cstarts[:-1])
            gu = np.floor((cxs - minx[gid]) / DS_CELL_SIDE).astype(np.int64)
            gv = np.floor((cys - miny[gid]) / DS_CELL_SIDE).astype(np.int64)
            keep = _extreme_positions(gid, gu, gv, cxs, cys, cand_pts)
            keep.sort()
            qpts = cand_pts[keep]
            qgid = gid[keep]
            qstarts = np.flatnonzero(np.r_[True, qgid[1:] != qgid[:-1]])
            qstarts = np.append(qstarts, len(qpts)).astype(np.int64)
            coreset_points += len(qpts)
            # Targets, compacted to match the cell order.
            tpos = np.concatenate(
                [t_sorted[s:e] for s, e in tgt_slices]
            )
            tstarts = np.zeros(len(tgt_slices) + 1, dtype=np.int64)
            np.cumsum([e - s for s, e in tgt_slices], out=tstarts[1:])
            chosen_mask = cells.solve_pds_cells(
                ps.xs[qpts], ps.ys[qpts], qstarts,
                ps.xs[tpos], ps.ys[tpos], tstarts,
                budget=budget, cap=cap, fast=fast,
            )
            chosen = np.unique(qpts[chosen_mask])
            if best_size is None or len(chosen) < best_size:
                best_size = len(chosen)
                best_indices = chosen
                best_shift = (i, j)

    meta["best_shift"] = best_shift
    meta["coreset_points"] = int(coreset_points)
    meta["elapsed_s"] = time.perf_counter() - t0
    return Solution([int(v) for v in best_indices], float(best_size), "pds-udg", meta)


def ds_shifted(points, eps: float, budget: int = DEFAULT_NODE_BUDGET,
               cap: int = DEFAULT_CAP, fast: bool | None = None) -> Solution:
    """(4+eps)-approximate minimum dominating set (all points are targets)."""
    sol = pds_shifted(PdsInstance.full(points), eps, budget=budget, cap=cap, fast=fast)
    sol.kind = "ds-udg"
    return sol


def expansion_count(x: float, y: float, k: int) -> int:
    """Total number of (shift, cell) pairs whose expansion contains (x, y).

    For points off the subcell boundaries this is exactly (k+2)^2 across the
    k^2 shifts.
    """
    su = math.floor(x / 2.0)
    sv = math.floor(y / 2.0)
    total = 0
    for i in range(k):
        cu = (su - i) % k
        fu = 1 + (cu == 0) + (cu == k - 1)
        for j in range(k):
            cv = (sv - j) % k
            total += fu * (1 + (cv == 0) + (cv == k - 1))
    return total
