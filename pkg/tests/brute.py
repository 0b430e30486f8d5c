"""Naive 2^n enumeration oracles, independent of the library's solvers.

Feasibility of every subset is evaluated with vectorized bit arithmetic;
nothing here shares code with coregrid.exactsolve.
"""

import numpy as np

from coregrid import PointSet, RectSet


def _udg_edges(ps: PointSet):
    n = len(ps)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            dx = ps.xs[a] - ps.xs[b]
            dy = ps.ys[a] - ps.ys[b]
            if dx * dx + dy * dy <= 4.0:
                edges.append((a, b))
    return edges


def _rect_edges(rs: RectSet):
    n = len(rs)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if (
                abs(rs.cxs[a] - rs.cxs[b]) < (rs.widths[a] + rs.widths[b]) / 2.0
                and abs(rs.cys[a] - rs.cys[b]) < (rs.heights[a] + rs.heights[b]) / 2.0
            ):
                edges.append((a, b))
    return edges


def _subset_weights(ws, subs):
    total = np.zeros(len(subs))
    for i, w in enumerate(ws):
        total += ((subs >> i) & 1) * w
    return total


def brute_mwis_weight(ps, edges=None) -> float:
    """Maximum weight over all independent subsets (UDG adjacency)."""
    n = len(ps)
    subs = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(len(subs), dtype=bool)
    for a, b in (_udg_edges(ps) if edges is None else edges):
        ok &= ((subs >> a) & (subs >> b) & 1) == 0
    return float(_subset_weights(ps.ws, subs[ok]).max())


def brute_mwis_rect_weight(rs) -> float:
    n = len(rs)
    subs = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(len(subs), dtype=bool)
    for a, b in _rect_edges(rs):
        ok &= ((subs >> a) & (subs >> b) & 1) == 0
    return float(_subset_weights(rs.ws, subs[ok]).max())


def brute_max_is_size(ps) -> int:
    n = len(ps)
    subs = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(len(subs), dtype=bool)
    for a, b in _udg_edges(ps):
        ok &= ((subs >> a) & (subs >> b) & 1) == 0
    return int(np.bitwise_count(subs[ok]).max())


def brute_min_vc_size(ps) -> int:
    n = len(ps)
    subs = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(len(subs), dtype=bool)
    for a, b in _udg_edges(ps):
        ok &= (((subs >> a) | (subs >> b)) & 1) == 1
    return int(np.bitwise_count(subs[ok]).min())


def brute_min_ds_size(cand: PointSet, targets: PointSet):
    """Minimum candidate-subset size dominating every target; None if infeasible."""
    nc = len(cand)
    dom = []
    for t in range(len(targets)):
        m = np.uint64(0)
        for c in range(nc):
            dx = targets.xs[t] - cand.xs[c]
            dy = targets.ys[t] - cand.ys[c]
            if dx * dx + dy * dy <= 4.0:
                m |= np.uint64(1 << c)
        if m == 0:
            return None
        dom.append(m)
    subs = np.arange(1 << nc, dtype=np.uint64)
    ok = np.ones(len(subs), dtype=bool)
    for m in dom:
        ok &= (subs & m) != 0
    if not ok.any():
        return None
    return int(np.bitwise_count(subs[ok]).min())
