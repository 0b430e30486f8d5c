"""Minimum vertex cover on unit disk graphs, (1+eps)-approximate.

Per bounded-diameter subinstance there are two regimes: when the point count
is below a packing threshold the cover is solved exactly; otherwise the
complement of the coreset-based 4-approximate independent set is already a
(1+eps)-approximate cover.  The shifted driver applies this per cell (with
parameter eps/2 and the cell expansion as input) and keeps the smallest
union over all k^2 shifts.
"""

from __future__ import annotations

import logging
import time

import numpy as np

from .errors import BudgetExceeded, NonPositiveEps
from .exactsolve import DEFAULT_CAP, DEFAULT_NODE_BUDGET, exact_min_vc_udg
from .geom import PointSet, Solution, diam_upper
from .shifting import sort_groups, subcell_keys
from .wis_udg import wis_constdiam
from .ds_udg import _expansion_incidences

logger = logging.getLogger(__name__)


def vc_threshold(diam_bound: float, eps: float) -> float:
    """Point-count threshold separating the exact and complement regimes."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    if diam_bound < 0:
        raise ValueError(f"diam_bound must be >= 0, got {diam_bound}")
    return (1.0 + 3.0 / (4.0 * eps)) * (diam_bound + 2.0) ** 2 / 4.0


def vc_select_k(eps: float) -> int:
    """Smallest k with ((k+2)/k)^2 <= (1+eps)/(1+eps/2)."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    k = 1
    while ((k + 2) / k) ** 2 > (1.0 + eps) / (1.0 + eps / 2.0):
        k += 1
    return k


def vc_constdiam(points, eps: float, budget: int = DEFAULT_NODE_BUDGET,
                 cap: int = DEFAULT_CAP) -> Solution:
    """(1+eps)-approximate cover for a bounded-diameter input."""
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    ps = PointSet.from_points(points)
    n = len(ps)
    if n == 0:
        return Solution([], 0.0, "vc-udg", {"branch": "exact"})
    if n < vc_threshold(diam_upper(ps), eps):
        try:
            sol = exact_min_vc_udg(ps, budget=budget, cap=cap)
            sol.meta["branch"] = "exact"
            return sol
        except BudgetExceeded:
            logger.warning(
                "exact VC branch hit its node budget (n=%d); "
                "falling back to the complement branch", n,
            )
    unit = PointSet(ps.xs, ps.ys, np.ones(n))
    is_sol = wis_constdiam(unit, budget=budget, cap=cap)
    in_is = np.zeros(n, dtype=bool)
    in_is[is_sol.indices] = True
    cover = np.flatnonzero(~in_is)
    return Solution(
        [int(v) for v in cover],
        float(len(cover)),
        "vc-udg",
        {"branch": "complement", "is_size": len(is_sol.indices)},
    )


def vc_shifted(points, eps: float, budget: int = DEFAULT_NODE_BUDGET,
               cap: int = DEFAULT_CAP) -> Solution:
    """(1+eps)-approximate minimum vertex cover via shifted grids.

    Every edge has both endpoints inside the expansion of the cell owning
    one endpoint, so per-cell covers of the expansions union into a cover.
    """
    if eps <= 0:
        raise NonPositiveEps(f"eps must be > 0, got {eps}")
    t0 = time.perf_counter()
    k = vc_select_k(eps)
    ps = PointSet.from_points(points)
    n = len(ps)
    meta = {"k": k, "eps": eps, "shifts_evaluated": k * k, "best_shift": (0, 0)}
    if n == 0:
        meta["elapsed_s"] = time.perf_counter() - t0
        return Solution([], 0.0, "vc-udg", meta)

    su, sv = subcell_keys(ps.xs, ps.ys)
    best_size = None
    best_indices: np.ndarray | None = None
    best_shift = (0, 0)

    for i in range(k):
        for j in range(k):
            cand_ids, cku, ckv, base_u, base_v = _expansion_incidences(su, sv, i, j, k)
            # Occupied cells, in the same ascending (u, v) order as the
            # candidate groups.
            o_order, o_starts = sort_groups(base_u, base_v)
            o_keys_u = base_u[o_order][o_starts[:-1]]
            o_keys_v = base_v[o_order][o_starts[:-1]]
            c_order, c_starts = sort_groups(cku, ckv, tiebreak=cand_ids)
            c_keys_u = cku[c_order][c_starts[:-1]]
            c_keys_v = ckv[c_order][c_starts[:-1]]
            cover: set[int] = set()
            ci = 0
            ncg = len(c_keys_u)
            for og in range(len(o_keys_u)):
                ou, ov = o_keys_u[og], o_keys_v[og]
                while ci < ncg and (c_keys_u[ci], c_keys_v[ci]) < (ou, ov):
                    ci += 1
                assert ci < ncg and (c_keys_u[ci], c_keys_v[ci]) == (ou, ov)
                members = cand_ids[c_order[c_starts[ci]:c_starts[ci + 1]]]
                sub = PointSet(ps.xs[members], ps.ys[members], ps.ws[members])
                sol = vc_constdiam(sub, eps / 2.0, budget=budget, cap=cap)
                cover.update(int(members[p]) for p in sol.indices)
            if best_size is None or len(cover) < best_size:
                best_size = len(cover)
                best_indices = sorted(cover)
                best_shift = (i, j)

    meta["best_shift"] = best_shift
    meta["elapsed_s"] = time.perf_counter() - t0
    return Solution(list(best_indices), float(best_size), "vc-udg", meta)
