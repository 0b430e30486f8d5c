"""Batched small-instance solves for the shifted drivers.

The shifted drivers hand over flat arrays holding many per-cell subproblems
at once (elements of each cell are contiguous, ordered by ascending original
index).  Cells are solved independently; a numba kernel handles the common
case (<= 64 elements per cell) when available, with a pure-Python fallback
that implements the identical search, so either path returns the same
solution.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded, CapExceeded
from .exactsolve import _greedy_is, _MaxISSearch, _PdsSearch

_FAST = None  # lazily-resolved module; False when numba is unavailable


def _fast_module():
    global _FAST
    if _FAST is None:
        try:
            from . import fastkernels

            _FAST = fastkernels
        except ImportError:
            _FAST = False
    return _FAST


def _resolve_fast(fast: bool | None):
    if fast is False:
        return False
    mod = _fast_module()
    if fast is True and not mod:
        raise RuntimeError("fast=True requested but numba is not installed")
    return mod


def _mwis_mask_local(xs, ys, ws, budget: int) -> int:
    """Exact MWIS bitmask on one small cell (brute-force adjacency)."""
    m = len(xs)
    if m == 1:
        return 1
    adjc = [1 << i for i in range(m)]
    for a in range(m):
        xa, ya = xs[a], ys[a]
        for b in range(a + 1, m):
            dx = xa - xs[b]
            dy = ya - ys[b]
            if dx * dx + dy * dy <= 4.0:
                adjc[a] |= 1 << b
                adjc[b] |= 1 << a
    search = _MaxISSearch(ws, adjc, budget)
    search.seed(*_greedy_is(ws, adjc, search.order))
    search.run((1 << m) - 1)
    return search.best_mask


def solve_mwis_cells(xs, ys, ws, starts, budget: int, cap: int,
                     fast: bool | None = None) -> np.ndarray:
    """Solve MWIS independently inside each cell; returns a selection mask."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    ws = np.asarray(ws, dtype=np.float64)
    starts = np.asarray(starts, dtype=np.int64)
    sel = np.zeros(len(xs), dtype=bool)
    ncells = len(starts) - 1
    if ncells <= 0:
        return sel
    sizes = np.diff(starts)
    if sizes.max(initial=0) > cap:
        raise CapExceeded(f"a cell holds {int(sizes.max())} coreset points, cap {cap}")
    mod = _resolve_fast(fast)
    pending = range(ncells)
    if mod:
        small = sizes <= 64
        sel, status = mod.mwis_cells(xs, ys, ws, starts, small, budget)
        if status < 0:
            raise BudgetExceeded(f"node budget {budget} exhausted")
        pending = np.flatnonzero(~small)
    for c in pending:
        s, e = int(starts[c]), int(starts[c + 1])
        if e == s:
            continue
        mask = _mwis_mask_local(xs[s:e], ys[s:e], ws[s:e], budget)
        pos = s
        while mask:
            if mask & 1:
                sel[pos] = True
            mask >>= 1
            pos += 1
    return sel


def _pds_local(cxs, cys, txs, tys, budget: int) -> list[int]:
    """Exact minimum partial dominating set on one cell.

    Returns positions into the candidate slice; raises Infeasible if a
    target has no dominator.
    """
    nc = len(cxs)
    nt = len(txs)
    dom = []
    for t in range(nt):
        m = 0
        tx, ty = txs[t], tys[t]
        for c in range(nc):
            dx = tx - cxs[c]
            dy = ty - cys[c]
            if dx * dx + dy * dy <= 4.0:
                m |= 1 << c
        dom.append(m)
    class_of: dict[int, int] = {}
    for m in dom:
        if m == 0:
            from .errors import Infeasible

            raise Infeasible("target with no dominator in cell")
        if m not in class_of:
            class_of[m] = len(class_of)
    cov = [0] * nc
    for m, cls in class_of.items():
        mm = m
        while mm:
            low = mm & -mm
            cov[low.bit_length() - 1] |= 1 << cls
            mm &= mm - 1
    search = _PdsSearch(cov, len(class_of), budget)
    return search.solve()


def solve_pds_cells(cxs, cys, cstarts, txs, tys, tstarts, budget: int, cap: int,
                    fast: bool | None = None) -> np.ndarray:
    """Solve min-PDS in each cell; returns a selection mask over candidates."""
    cxs = np.asarray(cxs, dtype=np.float64)
    cys = np.asarray(cys, dtype=np.float64)
    txs = np.asarray(txs, dtype=np.float64)
    tys = np.asarray(tys, dtype=np.float64)
    cstarts = np.asarray(cstarts, dtype=np.int64)
    tstarts = np.asarray(tstarts, dtype=np.int64)
    sel = np.zeros(len(cxs), dtype=bool)
    ncells = len(cstarts) - 1
    if ncells <= 0:
        return sel
    csizes = np.diff(cstarts)
    if csizes.max(initial=0) > cap:
        raise CapExceeded(f"a cell holds {int(csizes.max())} candidates, cap {cap}")
    mod = _resolve_fast(fast)
    pending = range(ncells)
    if mod:
        tsizes = np.diff(tstarts)
        small = (csizes <= 64) & (tsizes <= 64)
        sel, status = mod.pds_cells(cxs, cys, cstarts, txs, tys, tstarts, small, budget)
        if status == -1:
            raise BudgetExceeded(f"node budget {budget} exhausted")
        if status == -2:
            from .errors import Infeasible

            raise Infeasible("target with no dominator in cell")
        pending = np.flatnonzero(~small)
    for c in pending:
        cs, ce = int(cstarts[c]), int(cstarts[c + 1])
        ts, te = int(tstarts[c]), int(tstarts[c + 1])
        if te == ts:
            continue
        chosen = _pds_local(cxs[cs:ce], cys[cs:ce], txs[ts:te], tys[ts:te], budget)
        for pos in chosen:
            sel[cs + pos] = True
    return sel
