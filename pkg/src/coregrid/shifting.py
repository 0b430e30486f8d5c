"""Shared grouping machinery for the shifted-grid drivers.

All UDG drivers align their k^2 translated grids (cells of side 2k rooted at
(2i, 2j)) to the global subgrid of side 2 rooted at the origin, so cell and
contraction/expansion membership reduce to integer arithmetic on a point's
subcell key.
"""

from __future__ import annotations

import numpy as np


def subcell_keys(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Keys of the side-2 subgrid rooted at the origin (half-open cells)."""
    su = np.floor(xs / 2.0).astype(np.int64)
    sv = np.floor(ys / 2.0).astype(np.int64)
    return su, sv


def sort_groups(ku: np.ndarray, kv: np.ndarray, tiebreak: np.ndarray | None = None):
    """Sort elements by integer key pair (ku, kv) and find group boundaries.

    Returns (order, starts): ``order`` permutes elements so equal keys are
    contiguous (ties resolved by ``tiebreak`` ascending when given) and
    ``starts`` holds the ``len(groups) + 1`` boundary offsets into ``order``.
    """
    n = len(ku)
    if n == 0:
        return np.empty(0, dtype=np.int64), np.zeros(1, dtype=np.int64)
    keys = (kv, ku) if tiebreak is None else (tiebreak, kv, ku)
    order = np.lexsort(keys)
    us = ku[order]
    vs = kv[order]
    change = np.empty(n, dtype=bool)
    change[0] = True
    np.not_equal(us[1:], us[:-1], out=change[1:])
    change[1:] |= vs[1:] != vs[:-1]
    starts = np.flatnonzero(change)
    starts = np.append(starts, n).astype(np.int64)
    return order, starts


def group_ids(starts: np.ndarray) -> np.ndarray:
    """Group id per sorted element: [0,0,...,1,1,...] matching ``starts``."""
    n = int(starts[-1])
    gid = np.zeros(n, dtype=np.int64)
    if len(starts) > 2:
        gid[starts[1:-1]] = 1
        np.cumsum(gid, out=gid)
    return gid


def first_per_group(*keys: np.ndarray) -> np.ndarray:
    """Positions where the combined integer key tuple changes (incl. 0)."""
    n = len(keys[0])
    if n == 0:
        return np.empty(0, dtype=np.int64)
    change = np.zeros(n, dtype=bool)
    change[0] = True
    for k in keys:
        change[1:] |= k[1:] != k[:-1]
    return np.flatnonzero(change)


def max_weight_per_subcell(gid, gu, gv, ws, tiebreak):
    """Positions (into the input arrays) of the max-weight element of each
    (group, subcell-key) bucket; ties go to the smallest ``tiebreak``."""
    if len(gid) == 0:
        return np.empty(0, dtype=np.int64)
    order = np.lexsort((tiebreak, -ws, gv, gu, gid))
    firsts = first_per_group(gid[order], gu[order], gv[order])
    return order[firsts]
