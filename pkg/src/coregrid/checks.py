"""Independent feasibility checkers.

These re-derive feasibility from the raw instance and a plain index list,
sharing no code with the solvers, so CLI reports and tests never copy a
solver's own claim.
"""

from __future__ import annotations

import math

from .geom import PointSet, RectSet


def _grid(ps: PointSet, members) -> dict:
    buckets: dict[tuple[int, int], list[int]] = {}
    for p in members:
        key = (int(math.floor(ps.xs[p] / 2.0)), int(math.floor(ps.ys[p] / 2.0)))
        buckets.setdefault(key, []).append(p)
    return buckets


def is_independent_udg(points, indices) -> bool:
    """All pairwise distances strictly greater than 2."""
    ps = PointSet.from_points(points)
    idxs = list(indices)
    if len(set(idxs)) != len(idxs):
        return False
    buckets = _grid(ps, idxs)
    for (u, v), members in buckets.items():
        neigh = []
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                neigh.extend(buckets.get((u + du, v + dv), ()))
        for p in members:
            for q in neigh:
                if q <= p:
                    continue
                dx = ps.xs[p] - ps.xs[q]
                dy = ps.ys[p] - ps.ys[q]
                if dx * dx + dy * dy <= 4.0:
                    return False
    return True


def is_dominating(points, targets, indices) -> bool:
    """Every target within distance <= 2 of some selected point."""
    ps = PointSet.from_points(points)
    buckets = _grid(ps, set(indices))
    for t in targets:
        x, y = ps.xs[t], ps.ys[t]
        u = int(math.floor(x / 2.0))
        v = int(math.floor(y / 2.0))
        hit = False
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                for q in buckets.get((u + du, v + dv), ()):
                    dx = x - ps.xs[q]
                    dy = y - ps.ys[q]
                    if dx * dx + dy * dy <= 4.0:
                        hit = True
                        break
                if hit:
                    break
            if hit:
                break
        if not hit:
            return False
    return True


def is_vertex_cover(points, indices) -> bool:
    """Every edge touches the cover, i.e. the complement is independent."""
    ps = PointSet.from_points(points)
    outside = sorted(set(range(len(ps))) - set(int(i) for i in indices))
    return is_independent_udg(ps, outside)


def is_independent_rects(rects, indices) -> bool:
    """No two selected rectangles have intersecting interiors."""
    rs = RectSet.from_rects(rects)
    idxs = list(indices)
    if len(set(idxs)) != len(idxs):
        return False
    if not idxs:
        return True
    side = max(float(rs.widths[idxs].max()), float(rs.heights[idxs].max()))
    buckets: dict[tuple[int, int], list[int]] = {}
    for p in idxs:
        key = (int(math.floor(rs.cxs[p] / side)), int(math.floor(rs.cys[p] / side)))
        buckets.setdefault(key, []).append(p)
    for (u, v), members in buckets.items():
        neigh = []
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                neigh.extend(buckets.get((u + du, v + dv), ()))
        for p in members:
            for q in neigh:
                if q <= p:
                    continue
                if (
                    abs(rs.cxs[p] - rs.cxs[q]) < (rs.widths[p] + rs.widths[q]) / 2.0
                    and abs(rs.cys[p] - rs.cys[q]) < (rs.heights[p] + rs.heights[q]) / 2.0
                ):
                    return False
    return True


def solution_feasible(kind: str, instance, sol_indices, targets=None) -> bool:
    """Dispatch on problem kind; used by the CLI's recomputed ``feasible``."""
    if kind in ("wis-udg",):
        return is_independent_udg(instance, sol_indices)
    if kind in ("ds-udg", "pds-udg"):
        tgts = targets if targets is not None else range(len(PointSet.from_points(instance)))
        return is_dominating(instance, tgts, sol_indices)
    if kind == "vc-udg":
        return is_vertex_cover(instance, sol_indices)
    if kind == "wis-rect":
        return is_independent_rects(instance, sol_indices)
    raise ValueError(f"unknown problem kind {kind!r}")
