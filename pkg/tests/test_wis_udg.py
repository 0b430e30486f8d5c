import math

import pytest

import brute
from coregrid import (
    NonPositiveEps,
    WeightedPoint,
    exact_mwis_udg,
    gen_uniform_points,
    is_independent_udg,
    wis_constdiam,
    wis_coreset,
    wis_select_k,
    wis_shifted,
)
from coregrid.wis_udg import WIS_GAMMA, WIS_CELL_SIDE, contraction_count


def P(x, y, w=1.0, idx=0):
    return WeightedPoint(x, y, w, idx)


class TestSelectK:
    def test_eps4(self):
        assert wis_select_k(4) == 7

    def test_equality_boundary(self):
        assert wis_select_k(32) == 3

    def test_eps1(self):
        assert wis_select_k(1) == 19

    def test_nonpositive(self):
        with pytest.raises(NonPositiveEps):
            wis_select_k(0)

    def test_monotone_nonincreasing(self):
        ks = [wis_select_k(eps / 4.0) for eps in range(1, 200)]
        assert all(a >= b for a, b in zip(ks, ks[1:]))

    def test_defining_inequality(self):
        for eps in (0.5, 1, 2, 4, 10, 32):
            k = wis_select_k(eps)
            assert k >= 3
            assert ((k - 2) / k) ** 2 >= 4 / (4 + eps)
            if k > 3:
                assert ((k - 3) / (k - 1)) ** 2 < 4 / (4 + eps)


class TestCoreset:
    def test_max_weight_per_cell(self):
        pts = [P(0.0, 0.0, 2.0, 0), P(0.01, 0.01, 5.0, 1)]
        assert wis_coreset(pts) == [1]

    def test_tie_smallest_index(self):
        pts = [P(0.0, 0.0, 3.0, 0), P(0.01, 0.01, 3.0, 1)]
        assert wis_coreset(pts) == [0]

    def test_spread_points_all_kept(self):
        pts = [P(0, 0, idx=0), P(1, 0, idx=1), P(3, 0, idx=2)]
        assert wis_coreset(pts) == [0, 1, 2]

    def test_cell_diameter_constant(self):
        assert WIS_GAMMA == 0.29
        assert WIS_GAMMA < (2 - math.sqrt(2)) / 2
        assert WIS_CELL_SIDE == pytest.approx(0.29 / math.sqrt(2))

    def test_coreset_size_bound(self):
        # per outer cell of side 2k, |Q| <= ceil(2k / cell_side)^2
        k = 7
        ps = gen_uniform_points(3000, 2 * k, seed=3)
        q = wis_coreset(ps)
        assert len(q) <= math.ceil(2 * k / WIS_CELL_SIDE) ** 2


class TestConstDiam:
    def test_path_of_three(self):
        sol = wis_constdiam([P(0, 0, 3, 0), P(1, 0, 2, 1), P(3, 0, 2, 2)])
        assert sol.objective == 5.0

    def test_singleton(self):
        sol = wis_constdiam([P(2, 2, 4, 0)])
        assert sol.indices == [0] and sol.objective == 4.0

    def test_ratio_seed11(self):
        ps = gen_uniform_points(12, 4.0, seed=11)
        sol = wis_constdiam(ps)
        assert sol.objective >= brute.brute_mwis_weight(ps) / 4 - 1e-9
        assert is_independent_udg(ps, sol.indices)

    def test_ratio_suite(self):
        # diameter <= 10: box side 7 gives diagonal ~9.9
        for seed in range(200):
            n = 4 + seed % 17
            ps = gen_uniform_points(n, 7.0, seed=seed)
            sol = wis_constdiam(ps)
            opt = exact_mwis_udg(ps)
            assert sol.objective >= opt.objective / 4 - 1e-9
            assert is_independent_udg(ps, sol.indices)


class TestShifted:
    def test_empty(self):
        sol = wis_shifted([], 4.0)
        assert sol.indices == [] and sol.objective == 0.0

    def test_single_far_point(self):
        sol = wis_shifted([P(100.5, 100.5, 2.0, 0)], 4.0)
        assert sol.indices == [0] and sol.objective == 2.0

    def test_ratio_seed5(self):
        ps = gen_uniform_points(25, 30.0, seed=5)
        sol = wis_shifted(ps, 4.0)
        assert sol.objective >= brute.brute_mwis_weight(ps) / 8 - 1e-9
        assert is_independent_udg(ps, sol.indices)

    def test_nonpositive_eps(self):
        with pytest.raises(NonPositiveEps):
            wis_shifted([P(0, 0)], 0.0)

    def test_ratio_suite(self):
        for seed in range(200):
            n = 4 + seed % 22
            ps = gen_uniform_points(n, 4.0 + (seed % 5) * 6.0, seed=seed)
            sol = wis_shifted(ps, 4.0)
            opt = exact_mwis_udg(ps)
            assert sol.objective >= opt.objective / 8 - 1e-9
            assert is_independent_udg(ps, sol.indices)

    def test_determinism(self):
        ps = gen_uniform_points(40, 20.0, seed=9)
        a = wis_shifted(ps, 4.0)
        b = wis_shifted(ps, 4.0)
        assert a.indices == b.indices
        assert a.meta["best_shift"] == b.meta["best_shift"]

    def test_meta_fields(self):
        ps = gen_uniform_points(30, 20.0, seed=1)
        sol = wis_shifted(ps, 4.0)
        assert sol.meta["k"] == 7
        assert sol.meta["shifts_evaluated"] == 49
        i, j = sol.meta["best_shift"]
        assert 0 <= i < 7 and 0 <= j < 7


class TestContractionCombinatorics:
    def test_non_boundary_point(self):
        # a point off the side-2 subgrid boundaries lies in exactly (k-2)^2
        # contractions across the k^2 shifts
        k = 7
        rng = gen_uniform_points(1000, 100.0, seed=17)
        for x, y in zip(rng.xs, rng.ys):
            assert contraction_count(x, y, k) == (k - 2) ** 2
