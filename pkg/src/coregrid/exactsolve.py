"""Exact solvers for small instances.

These back the per-cell subproblem solves of the shifted drivers and double
as verification oracles.  All of them are deterministic: among optimal
solutions they return the lexicographically smallest sorted index list
(for VC, the cover itself is lex-minimised).  Search is bounded by a node
budget; hitting it raises :class:`BudgetExceeded` rather than silently
returning an approximation.
"""

from __future__ import annotations

import math

from .errors import BudgetExceeded, CapExceeded, Infeasible
from .geom import PointSet, RectSet, Solution

DEFAULT_CAP = 2000
DEFAULT_NODE_BUDGET = 10 ** 8


def lex_less(a: int, b: int) -> bool:
    """Compare two index bitmasks as ascending-sorted index lists.

    Returns True iff sorted(bits(a)) < sorted(bits(b)) lexicographically,
    with a proper prefix ordered before its extensions.
    """
    if a == b:
        return False
    d = a ^ b
    low = d & -d
    pos = low.bit_length() - 1
    if a & low:
        holder, other = a, b
        holder_is_a = True
    else:
        holder, other = b, a
        holder_is_a = False
    # Bits below pos agree.  The holder's next element is pos; the other's
    # next element is either absent (other is a prefix, hence smaller) or
    # larger than pos (holder is smaller).
    other_has_higher = (other >> (pos + 1)) != 0
    return other_has_higher if holder_is_a else not other_has_higher


def _udg_adj_masks(ps: PointSet) -> list[int]:
    """Closed-neighborhood bitmasks under the distance-2 adjacency rule."""
    n = len(ps)
    masks = [1 << i for i in range(n)]
    # Grid-accelerate the pair scan: distance <= 2 pairs live in 3x3 blocks
    # of a side-2 grid.
    buckets: dict[tuple[int, int], list[int]] = {}
    xs, ys = ps.xs, ps.ys
    for i in range(n):
        key = (int(math.floor(xs[i] / 2.0)), int(math.floor(ys[i] / 2.0)))
        buckets.setdefault(key, []).append(i)
    for (u, v), members in buckets.items():
        neigh = []
        for du in (-1, 0, 1):
            for dv in (-1, 0, 1):
                neigh.extend(buckets.get((u + du, v + dv), ()))
        for i in members:
            xi, yi = xs[i], ys[i]
            mi = masks[i]
            for j in neigh:
                if j <= i:
                    continue
                dx = xi - xs[j]
                dy = yi - ys[j]
                if dx * dx + dy * dy <= 4.0:
                    mi |= 1 << j
                    masks[j] |= 1 << i
            masks[i] = mi
    return masks


def _rect_adj_masks(rs: RectSet) -> list[int]:
    n = len(rs)
    masks = [1 << i for i in range(n)]
    cxs, cys, widths, heights = rs.cxs, rs.cys, rs.widths, rs.heights
    for i in range(n):
        for j in range(i + 1, n):
            if (
                abs(cxs[i] - cxs[j]) < (widths[i] + widths[j]) / 2.0
                and abs(cys[i] - cys[j]) < (heights[i] + heights[j]) / 2.0
            ):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def _clique_cover_ub(cand: int, order: list[int], ws, adjc: list[int]) -> float:
    """Upper bound: greedy clique cover, summing each clique's max weight."""
    ub = 0.0
    cliques: list[int] = []
    for v in order:
        bit = 1 << v
        if not (cand & bit):
            continue
        placed = False
        for idx, cm in enumerate(cliques):
            if cm & ~adjc[v] == 0:
                cliques[idx] = cm | bit
                placed = True
                break
        if not placed:
            cliques.append(bit)
            ub += ws[v]
    return ub


class _MaxISSearch:
    """Branch-and-bound maximum-weight independent set over bitmasks."""

    def __init__(self, ws, adjc, budget: int, prefer_complement: bool = False, n: int = 0):
        self.ws = ws
        self.adjc = adjc
        self.budget = budget
        self.nodes = 0
        self.order = sorted(range(len(adjc)), key=lambda i: (-ws[i], i))
        self.best_w = -1.0
        self.best_mask = 0
        # For VC we lex-minimise the complement of the independent set.
        self.prefer_complement = prefer_complement
        self.full = (1 << len(adjc)) - 1

    def _better(self, w: float, mask: int) -> bool:
        if w > self.best_w:
            return True
        if w < self.best_w:
            return False
        if self.prefer_complement:
            return lex_less(self.full & ~mask, self.full & ~self.best_mask)
        return lex_less(mask, self.best_mask)

    def seed(self, w: float, mask: int) -> None:
        if self.best_w < 0 or self._better(w, mask):
            self.best_w = w
            self.best_mask = mask

    def run(self, cand: int) -> None:
        self._dfs(cand, 0.0, 0)

    def _dfs(self, cand: int, cur_w: float, cur_mask: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        if cand == 0:
            if self._better(cur_w, cur_mask):
                self.best_w = cur_w
                self.best_mask = cur_mask
            return
        ub = cur_w + _clique_cover_ub(cand, self.order, self.ws, self.adjc)
        if ub < self.best_w:
            return
        for v in self.order:
            if cand & (1 << v):
                break
        self._dfs(cand & ~self.adjc[v], cur_w + self.ws[v], cur_mask | (1 << v))
        self._dfs(cand & ~(1 << v), cur_w, cur_mask)


def _greedy_is(ws, adjc, order) -> tuple[float, int]:
    used = 0
    mask = 0
    total = 0.0
    for v in order:
        if not (used & (1 << v)):
            mask |= 1 << v
            used |= adjc[v]
            total += ws[v]
    return total, mask


def _mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _solve_max_is(ws, adjc, budget: int, prefer_complement: bool = False):
    search = _MaxISSearch(ws, adjc, budget, prefer_complement)
    g_w, g_mask = _greedy_is(ws, adjc, search.order)
    search.seed(g_w, g_mask)
    import sys

    n = len(adjc)
    if n + 64 > sys.getrecursionlimit():
        sys.setrecursionlimit(2 * n + 256)
    search.run((1 << n) - 1)
    return search.best_mask, search.nodes


def exact_mwis_udg(points, budget: int = DEFAULT_NODE_BUDGET, cap: int = DEFAULT_CAP) -> Solution:
    """Maximum-weight independent set of a unit disk graph, exactly."""
    ps = PointSet.from_points(points)
    n = len(ps)
    if n > cap:
        raise CapExceeded(f"{n} points exceeds exact-solver cap {cap}")
    if n == 0:
        return Solution([], 0.0, "wis-udg", {"nodes": 0})
    adjc = _udg_adj_masks(ps)
    mask, nodes = _solve_max_is(list(ps.ws), adjc, budget)
    idxs = _mask_to_indices(mask)
    return Solution(idxs, float(sum(ps.ws[i] for i in idxs)), "wis-udg", {"nodes": nodes})


def exact_mwis_rect(rects, budget: int = DEFAULT_NODE_BUDGET, cap: int = DEFAULT_CAP) -> Solution:
    """Maximum-weight set of pairwise non-intersecting rectangles, exactly."""
    rs = RectSet.from_rects(rects)
    n = len(rs)
    if n > cap:
        raise CapExceeded(f"{n} rects exceeds exact-solver cap {cap}")
    if n == 0:
        return Solution([], 0.0, "wis-rect", {"nodes": 0})
    adjc = _rect_adj_masks(rs)
    mask, nodes = _solve_max_is(list(rs.ws), adjc, budget)
    idxs = _mask_to_indices(mask)
    return Solution(idxs, float(sum(rs.ws[i] for i in idxs)), "wis-rect", {"nodes": nodes})


def exact_min_vc_udg(points, budget: int = DEFAULT_NODE_BUDGET, cap: int = DEFAULT_CAP) -> Solution:
    """Minimum vertex cover: complement of a maximum-cardinality independent set."""
    ps = PointSet.from_points(points)
    n = len(ps)
    if n > cap:
        raise CapExceeded(f"{n} points exceeds exact-solver cap {cap}")
    if n == 0:
        return Solution([], 0.0, "vc-udg", {"nodes": 0})
    adjc = _udg_adj_masks(ps)
    mask, nodes = _solve_max_is([1.0] * n, adjc, budget, prefer_complement=True)
    cover = _mask_to_indices(((1 << n) - 1) & ~mask)
    return Solution(cover, float(len(cover)), "vc-udg", {"nodes": nodes})


# ---------------------------------------------------------------------------
# Minimum partial dominating set: iterative-deepening set cover.
# ---------------------------------------------------------------------------


def _pds_structures(cand: PointSet, targets: PointSet):
    """Dominator masks, target equivalence classes, candidate coverage masks."""
    nc, nt = len(cand), len(targets)
    dom_masks = []
    for t in range(nt):
        m = 0
        tx, ty = targets.xs[t], targets.ys[t]
        for c in range(nc):
            dx = tx - cand.xs[c]
            dy = ty - cand.ys[c]
            if dx * dx + dy * dy <= 4.0:
                m |= 1 << c
        if m == 0:
            raise Infeasible(f"target {t} has no dominator among the candidates")
        dom_masks.append(m)
    # Targets with identical dominator sets are interchangeable.
    class_of: dict[int, int] = {}
    for m in dom_masks:
        if m not in class_of:
            class_of[m] = len(class_of)
    ncls = len(class_of)
    cov = [0] * nc
    for m, cls in class_of.items():
        mm = m
        while mm:
            low = mm & -mm
            cov[low.bit_length() - 1] |= 1 << cls
            mm &= mm - 1
    return cov, ncls


def _pds_lower_bound(uncovered: int, conflict: list[int]) -> int:
    """Count pairwise candidate-disjoint classes still uncovered."""
    lb = 0
    rem = uncovered
    while rem:
        low = rem & -rem
        cls = low.bit_length() - 1
        lb += 1
        rem &= ~conflict[cls]
    return lb


class _PdsSearch:
    """Depth-limited, include-first DFS over candidates in ascending order.

    The first full cover found at depth limit s is the lexicographically
    smallest solution of size <= s; driving s upward from a lower bound
    yields the lex-min optimum.
    """

    def __init__(self, cov: list[int], ncls: int, budget: int):
        self.cov = cov
        self.ncls = ncls
        self.budget = budget
        self.nodes = 0
        nc = len(cov)
        # conflict[cls] = classes sharing at least one candidate with cls
        conflict = [0] * ncls
        for m in cov:
            mm = m
            while mm:
                low = mm & -mm
                conflict[low.bit_length() - 1] |= m
                mm &= mm - 1
        self.conflict = conflict
        # suffix_cov[i] = classes coverable using candidates i..nc-1
        suffix = [0] * (nc + 1)
        for i in range(nc - 1, -1, -1):
            suffix[i] = suffix[i + 1] | cov[i]
        self.suffix = suffix

    def solve(self) -> list[int]:
        all_cls = (1 << self.ncls) - 1
        if all_cls == 0:
            return []
        if all_cls & ~self.suffix[0]:
            raise Infeasible("some target class has no dominator")
        lb = _pds_lower_bound(all_cls, self.conflict)
        for s in range(lb, len(self.cov) + 1):
            res = self._dfs(0, all_cls, s, [])
            if res is not None:
                return res
        raise Infeasible("cover search exhausted without a solution")

    def _dfs(self, i: int, uncovered: int, depth_left: int, chosen: list[int]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget} exhausted")
        if uncovered == 0:
            return list(chosen)
        if depth_left == 0 or i >= len(self.cov):
            return None
        if uncovered & ~self.suffix[i]:
            return None
        if _pds_lower_bound(uncovered, self.conflict) > depth_left:
            return None
        gain = self.cov[i] & uncovered
        if gain:
            chosen.append(i)
            res = self._dfs(i + 1, uncovered & ~self.cov[i], depth_left - 1, chosen)
            chosen.pop()
            if res is not None:
                return res
        # A minimum cover never includes a candidate adding nothing new,
        # so a zero-gain candidate is only ever skipped.
        return self._dfs(i + 1, uncovered, depth_left, chosen)


def exact_min_pds(candidates, targets, budget: int = DEFAULT_NODE_BUDGET, cap: int = DEFAULT_CAP) -> Solution:
    """Minimum-cardinality subset of ``candidates`` dominating all ``targets``.

    Indices in the returned solution are ordinals into ``candidates``.
    """
    cand = PointSet.from_points(candidates)
    tgt = PointSet.from_points(targets)
    if len(cand) > cap:
        raise CapExceeded(f"{len(cand)} candidates exceeds exact-solver cap {cap}")
    if len(tgt) == 0:
        return Solution([], 0.0, "pds-udg", {"nodes": 0})
    if len(cand) == 0:
        raise Infeasible("no candidates to dominate a non-empty target set")
    cov, ncls = _pds_structures(cand, tgt)
    search = _PdsSearch(cov, ncls, budget)
    import sys

    if len(cov) + 64 > sys.getrecursionlimit():
        sys.setrecursionlimit(2 * len(cov) + 256)
    chosen = search.solve()
    return Solution(sorted(chosen), float(len(chosen)), "pds-udg", {"nodes": search.nodes})
