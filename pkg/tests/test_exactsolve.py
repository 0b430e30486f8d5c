
import numpy as np
import pytest

import brute
from coregrid import (
    BudgetExceeded,
    CapExceeded,
    Infeasible,
    PointSet,
    RectSet,
    WeightedPoint,
    WeightedRect,
    exact_min_pds,
    exact_min_vc_udg,
    exact_mwis_rect,
    exact_mwis_udg,
    gen_uniform_points,
    gen_uniform_rects,
    is_dominating,
    is_independent_rects,
    is_independent_udg,
    is_vertex_cover,
)
from coregrid.exactsolve import lex_less


def P(x, y, w=1.0, idx=0):
    return WeightedPoint(x, y, w, idx)


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class TestLexLess:
    def test_brute_force_agreement(self):
        # compare every pair of subsets of {0..5} against list comparison
        for a in range(64):
            for b in range(64):
                la = [i for i in range(6) if a >> i & 1]
                lb = [i for i in range(6) if b >> i & 1]
                assert lex_less(a, b) == (la < lb), (la, lb)

    def test_prefix_orders_before_extension(self):
        assert lex_less(mask_of([0]), mask_of([0, 5]))
        assert not lex_less(mask_of([0, 5]), mask_of([0]))


class TestMwisUdg:
    def test_empty(self):
        sol = exact_mwis_udg([])
        assert sol.indices == [] and sol.objective == 0.0

    def test_path_of_three(self):
        sol = exact_mwis_udg([P(0, 0, 3, 0), P(1, 0, 2, 1), P(3, 0, 2, 2)])
        assert sol.indices == [0, 2]
        assert sol.objective == 5.0

    def test_matches_enumeration_seed7(self):
        ps = gen_uniform_points(15, 6.0, seed=7)
        sol = exact_mwis_udg(ps)
        assert sol.objective == pytest.approx(brute.brute_mwis_weight(ps))

    def test_cap(self):
        ps = gen_uniform_points(30, 10.0, seed=0)
        with pytest.raises(CapExceeded):
            exact_mwis_udg(ps, cap=10)

    def test_budget(self):
        ps = gen_uniform_points(40, 9.0, seed=0)
        with pytest.raises(BudgetExceeded):
            exact_mwis_udg(ps, budget=3)


class TestMinPds:
    def test_middle_dominates_line(self):
        pts = [P(0, 0, idx=0), P(2, 0, idx=1), P(4, 0, idx=2)]
        sol = exact_min_pds(pts, pts)
        assert sol.indices == [1] and sol.objective == 1.0

    def test_self_domination(self):
        sol = exact_min_pds([P(0, 0)], [P(0, 0)])
        assert sol.indices == [0]

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            exact_min_pds([P(0, 0)], [P(5, 0)])

    def test_empty_targets(self):
        sol = exact_min_pds([P(0, 0)], [])
        assert sol.indices == []


class TestMinVc:
    def test_path_of_three(self):
        sol = exact_min_vc_udg([P(0, 0, idx=0), P(1, 0, idx=1), P(3, 0, idx=2)])
        assert sol.indices == [1]

    def test_edgeless(self):
        pts = [P(0, 0), P(5, 0), P(10, 0)]
        assert exact_min_vc_udg(pts).indices == []

    def test_matches_enumeration_seed3(self):
        ps = gen_uniform_points(12, 5.0, seed=3)
        sol = exact_min_vc_udg(ps)
        assert sol.size == brute.brute_min_vc_size(ps)

    def test_complementarity(self):
        for seed in range(20):
            ps = gen_uniform_points(14, 6.0, seed=seed)
            unit = PointSet(ps.xs, ps.ys, np.ones(len(ps)))
            vc = exact_min_vc_udg(ps)
            mis = exact_mwis_udg(unit)
            assert vc.size + mis.size == len(ps)


class TestMwisRect:
    def test_three_squares(self):
        rects = [WeightedRect(0, 0, 1, 1, 5, 0), WeightedRect(0.9, 0, 1, 1, 4, 1),
                 WeightedRect(2, 0, 1, 1, 3, 2)]
        sol = exact_mwis_rect(rects)
        assert sol.indices == [0, 2] and sol.objective == 8.0

    def test_singleton(self):
        sol = exact_mwis_rect([WeightedRect(0, 0, 1, 1, 2, 0)])
        assert sol.indices == [0]

    def test_identical_pair_keeps_heavier(self):
        rects = [WeightedRect(0, 0, 1, 1, 1, 0), WeightedRect(0, 0, 1, 1, 2, 1)]
        sol = exact_mwis_rect(rects)
        assert sol.indices == [1] and sol.objective == 2.0


class TestOracleAgreement:
    """Every solver equals naive full enumeration on small random instances."""

    def test_mwis_udg(self):
        for seed in range(200):
            n = 2 + seed % 15
            ps = gen_uniform_points(n, 1.0 + (seed % 5), seed=seed)
            sol = exact_mwis_udg(ps)
            assert sol.objective == pytest.approx(brute.brute_mwis_weight(ps))
            assert is_independent_udg(ps, sol.indices)

    def test_min_ds(self):
        for seed in range(200):
            n = 2 + seed % 15
            ps = gen_uniform_points(n, 1.0 + (seed % 6), seed=1000 + seed)
            sol = exact_min_pds(ps, ps)
            assert sol.size == brute.brute_min_ds_size(ps, ps)
            assert is_dominating(ps, range(len(ps)), sol.indices)

    def test_min_vc(self):
        for seed in range(200):
            n = 2 + seed % 15
            ps = gen_uniform_points(n, 1.0 + (seed % 5), seed=2000 + seed)
            sol = exact_min_vc_udg(ps)
            assert sol.size == brute.brute_min_vc_size(ps)
            assert is_vertex_cover(ps, sol.indices)

    def test_mwis_rect(self):
        for seed in range(200):
            n = 2 + seed % 13
            rs = gen_uniform_rects(n, 2.0 + (seed % 5), 2.0, seed=3000 + seed)
            sol = exact_mwis_rect(rs)
            assert sol.objective == pytest.approx(brute.brute_mwis_rect_weight(rs))
            assert is_independent_rects(rs, sol.indices)


def test_determinism():
    ps = gen_uniform_points(16, 5.0, seed=42)
    assert exact_mwis_udg(ps).indices == exact_mwis_udg(ps).indices
    assert exact_min_pds(ps, ps).indices == exact_min_pds(ps, ps).indices
    assert exact_min_vc_udg(ps).indices == exact_min_vc_udg(ps).indices
    rs = gen_uniform_rects(12, 5.0, 1.5, seed=42)
    assert exact_mwis_rect(rs).indices == exact_mwis_rect(rs).indices


def test_lex_min_among_optima():
    # two symmetric optima: {0} and {1} both weigh 1; expect index 0
    pts = [P(0, 0, 1.0, 0), P(1, 0, 1.0, 1)]
    assert exact_mwis_udg(pts).indices == [0]
    # VC of a single edge: covers {0} and {1} tie; expect [0]
    assert exact_min_vc_udg(pts).indices == [0]
    # PDS: either endpoint dominates both; expect [0]
    assert exact_min_pds(pts, pts).indices == [0]
