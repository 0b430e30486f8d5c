"""Numba kernels for batched per-cell solves.

These mirror the pure-Python searches in :mod:`coregrid.cells` exactly:
per-cell maximum-weight independent set (branch-and-bound with a greedy
clique-cover bound) and per-cell minimum partial dominating set
(iterative-deepening, include-first set cover).  Both break ties toward
the lexicographically smallest sorted index list, so the fast and slow
paths return identical selections.  Only cells with at most 64 elements
are handled here (bitmasks are single machine words); larger cells are
left untouched for the Python fallback.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True)
def _lex_less(a, b):
    # Compare bitmasks as ascending-sorted index lists (prefix < extension).
    if a == b:
        return False
    d = a ^ b
    low = d & (~d + _ONE)
    above = ~(low + low - _ONE) if low + low != _ZERO else _ZERO
    if a & low:
        return (b & above) != _ZERO
    return (a & above) == _ZERO


@njit(cache=True)
def _clique_ub(cand, order, ws, adjc, cliques):
    ub = 0.0
    ncl = 0
    for oi in range(len(order)):
        v = order[oi]
        bit = _ONE << np.uint64(v)
        if cand & bit == _ZERO:
            continue
        placed = False
        for c in range(ncl):
            if cliques[c] & ~adjc[v] == _ZERO:
                cliques[c] |= bit
                placed = True
                break
        if not placed:
            cliques[ncl] = bit
            ncl += 1
            ub += ws[v]
    return ub


@njit(cache=True)
def _mwis_cell(xs, ys, ws, budget, sel_out):
    """Exact MWIS on one cell; returns nodes used, or -1 on budget."""
    m = len(xs)
    if m == 0:
        return 0
    adjc = np.empty(m, dtype=np.uint64)
    for i in range(m):
        adjc[i] = _ONE << np.uint64(i)
    for a in range(m):
        for b in range(a + 1, m):
            dx = xs[a] - xs[b]
            dy = ys[a] - ys[b]
            if dx * dx + dy * dy <= 4.0:
                adjc[a] |= _ONE << np.uint64(b)
                adjc[b] |= _ONE << np.uint64(a)
    # Branch order: descending weight, ties toward the smaller index
    # (stable mergesort on negated weights).
    order = np.argsort(-ws, kind="mergesort")
    # Greedy seed.
    used = _ZERO
    best_mask = _ZERO
    best_w = 0.0
    for oi in range(m):
        v = order[oi]
        bit = _ONE << np.uint64(v)
        if used & bit == _ZERO:
            best_mask |= bit
            used |= adjc[v]
            best_w += ws[v]
    cliques = np.empty(m, dtype=np.uint64)
    # Explicit DFS stack; include branches are pushed last so they are
    # explored first, matching the recursive search.
    cap = 2 * m + 8
    st_cand = np.empty(cap, dtype=np.uint64)
    st_mask = np.empty(cap, dtype=np.uint64)
    st_w = np.empty(cap, dtype=np.float64)
    top = 0
    full = ~_ZERO >> np.uint64(64 - m)
    st_cand[top] = full
    st_mask[top] = _ZERO
    st_w[top] = 0.0
    top += 1
    nodes = 0
    while top > 0:
        top -= 1
        cand = st_cand[top]
        cur_mask = st_mask[top]
        cur_w = st_w[top]
        nodes += 1
        if nodes > budget:
            return -1
        if cand == _ZERO:
            if cur_w > best_w or (cur_w == best_w and _lex_less(cur_mask, best_mask)):
                best_w = cur_w
                best_mask = cur_mask
            continue
        ub = cur_w + _clique_ub(cand, order, ws, adjc, cliques)
        if ub < best_w:
            continue
        v = 0
        for oi in range(m):
            v = order[oi]
            if cand & (_ONE << np.uint64(v)) != _ZERO:
                break
        bit = _ONE << np.uint64(v)
        st_cand[top] = cand & ~bit
        st_mask[top] = cur_mask
        st_w[top] = cur_w
        top += 1
        st_cand[top] = cand & ~adjc[v]
        st_mask[top] = cur_mask | bit
        st_w[top] = cur_w + ws[v]
        top += 1
    for i in range(m):
        if best_mask & (_ONE << np.uint64(i)) != _ZERO:
            sel_out[i] = True
    return nodes


@njit(cache=True)
def mwis_cells(xs, ys, ws, starts, small, budget):
    """Solve MWIS in every cell flagged small; (selection mask, status)."""
    sel = np.zeros(len(xs), dtype=np.bool_)
    ncells = len(starts) - 1
    for c in range(ncells):
        if not small[c]:
            continue
        s = starts[c]
        e = starts[c + 1]
        if e == s:
            continue
        r = _mwis_cell(xs[s:e], ys[s:e], ws[s:e], budget, sel[s:e])
        if r < 0:
            return sel, -1
    return sel, 0


@njit(cache=True)
def _pds_lb(uncovered, conflict):
    lb = 0
    rem = uncovered
    while rem != _ZERO:
        low = rem & (~rem + _ONE)
        cls = 0
        t = low
        while t > _ONE:
            t >>= _ONE
            cls += 1
        lb += 1
        rem &= ~conflict[cls]
    return lb


@njit(cache=True)
def _pds_cell(cxs, cys, txs, tys, budget, sel_out):
    """Exact min partial dominating set on one cell.

    Returns nodes used, -1 on budget, -2 if some target is undominated.
    """
    nc = len(cxs)
    nt = len(txs)
    if nt == 0:
        return 0
    if nc == 0:
        return -2
    # Deduplicated dominator masks become target equivalence classes.
    cls_masks = np.empty(nt, dtype=np.uint64)
    ncls = 0
    for t in range(nt):
        m = _ZERO
        for c in range(nc):
            dx = txs[t] - cxs[c]
            dy = tys[t] - cys[c]
            if dx * dx + dy * dy <= 4.0:
                m |= _ONE << np.uint64(c)
        if m == _ZERO:
            return -2
        seen = False
        for k in range(ncls):
            if cls_masks[k] == m:
                seen = True
                break
        if not seen:
            cls_masks[ncls] = m
            ncls += 1
    # cov[c] = classes candidate c covers; conflict[k] = classes sharing a
    # candidate with class k; suffix[i] = classes coverable from i onward.
    cov = np.zeros(nc, dtype=np.uint64)
    for k in range(ncls):
        m = cls_masks[k]
        for c in range(nc):
            if m & (_ONE << np.uint64(c)) != _ZERO:
                cov[c] |= _ONE << np.uint64(k)
    conflict = np.zeros(ncls, dtype=np.uint64)
    for c in range(nc):
        m = cov[c]
        for k in range(ncls):
            if m & (_ONE << np.uint64(k)) != _ZERO:
                conflict[k] |= m
    suffix = np.zeros(nc + 1, dtype=np.uint64)
    for i in range(nc - 1, -1, -1):
        suffix[i] = suffix[i + 1] | cov[i]
    all_cls = ~_ZERO >> np.uint64(64 - ncls)
    nodes = 0
    # Iterative deepening: the first cover found at the smallest feasible
    # depth is the lexicographically smallest minimum cover.
    cap = 2 * nc + 8
    st_i = np.empty(cap, dtype=np.int64)
    st_unc = np.empty(cap, dtype=np.uint64)
    st_dl = np.empty(cap, dtype=np.int64)
    st_ch = np.empty(cap, dtype=np.uint64)
    for s in range(_pds_lb(all_cls, conflict), nc + 1):
        top = 0
        st_i[top] = 0
        st_unc[top] = all_cls
        st_dl[top] = s
        st_ch[top] = _ZERO
        top += 1
        while top > 0:
            top -= 1
            i = st_i[top]
            unc = st_unc[top]
            dl = st_dl[top]
            chosen = st_ch[top]
            nodes += 1
            if nodes > budget:
                return -1
            if unc == _ZERO:
                for c in range(nc):
                    if chosen & (_ONE << np.uint64(c)) != _ZERO:
                        sel_out[c] = True
                return nodes
            if dl == 0 or i >= nc:
                continue
            if unc & ~suffix[i] != _ZERO:
                continue
            if _pds_lb(unc, conflict) > dl:
                continue
            st_i[top] = i + 1
            st_unc[top] = unc
            st_dl[top] = dl
            st_ch[top] = chosen
            top += 1
            if cov[i] & unc != _ZERO:
                st_i[top] = i + 1
                st_unc[top] = unc & ~cov[i]
                st_dl[top] = dl - 1
                st_ch[top] = chosen | (_ONE << np.uint64(i))
                top += 1
    return -2


@njit(cache=True)
def pds_cells(cxs, cys, cstarts, txs, tys, tstarts, small, budget):
    """Solve min-PDS in every small cell; (candidate selection mask, status)."""
    sel = np.zeros(len(cxs), dtype=np.bool_)
    ncells = len(cstarts) - 1
    for c in range(ncells):
        if not small[c]:
            continue
        cs = cstarts[c]
        ce = cstarts[c + 1]
        ts = tstarts[c]
        te = tstarts[c + 1]
        if te == ts:
            continue
        r = _pds_cell(cxs[cs:ce], cys[cs:ce], txs[ts:te], tys[ts:te],
                      budget, sel[cs:ce])
        if r < 0:
            return sel, r
    return sel, 0
