from coregrid import (
    WeightedPoint,
    gen_clustered_points,
    gen_uniform_points,
    greedy_ds_udg,
    greedy_wis_udg,
    is_dominating,
    is_independent_udg,
    udg_adjacent,
)


def P(x, y, w=1.0, idx=0):
    return WeightedPoint(x, y, w, idx)


class TestGreedyWis:
    def test_trace_path_of_three(self):
        sol = greedy_wis_udg([P(0, 0, 3, 0), P(1, 0, 2, 1), P(3, 0, 2, 2)])
        assert sol.indices == [0, 2] and sol.objective == 5.0

    def test_singleton(self):
        assert greedy_wis_udg([P(1, 1, 2, 0)]).indices == [0]

    def test_clique_keeps_heaviest(self):
        pts = [P(i * 0.01, 0, 1.0 + i, i) for i in range(5)]
        sol = greedy_wis_udg(pts)
        assert sol.indices == [4]

    def test_independent_and_maximal(self):
        for seed in range(30):
            ps = gen_uniform_points(60, 15.0, seed=seed)
            sol = greedy_wis_udg(ps)
            assert is_independent_udg(ps, sol.indices)
            chosen = set(sol.indices)
            for i in range(len(ps)):
                if i in chosen:
                    continue
                assert any(
                    udg_adjacent(ps[i], ps[j]) for j in chosen
                ), "excluded point independent of the output: not maximal"


class TestGreedyDs:
    def test_trace_input_order(self):
        sol = greedy_ds_udg([P(0, 0, idx=0), P(2, 0, idx=1), P(4, 0, idx=2)])
        assert sol.indices == [0, 2]

    def test_singleton(self):
        assert greedy_ds_udg([P(0, 0)]).indices == [0]

    def test_empty(self):
        assert greedy_ds_udg([]).indices == []

    def test_dominates(self):
        for seed in range(30):
            ps = gen_uniform_points(60, 15.0, seed=100 + seed)
            sol = greedy_ds_udg(ps)
            assert is_dominating(ps, range(len(ps)), sol.indices)
        ps = gen_clustered_points(4, 8, 0.2, 80.0, seed=0)
        sol = greedy_ds_udg(ps)
        assert is_dominating(ps, range(len(ps)), sol.indices)
