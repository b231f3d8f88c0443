from math import ceil

import pytest

from locgame.decomposition import TreeDecomposition, interval_clique_path, minfill_td, td_stats, tree_edge_td
from locgame.designs import fano_heawood
from locgame.generators import (complete_multipartite, cycle, fig2_h, grid, multipartite_parts, path,
                                perfect_mary_tree, pg2_incidence, random_tree, star)
from locgame.solver import solve_capture_time
from locgame.strategies import (CopStrategy, StrategyError, build_strategy, evaluate_strategy,
                                kpartite_strategy, leaf_probe_all, mary_high, mary_low, parse_strategy_spec,
                                pathwidth_sweep, projective_two_phase, replay_transcript, scripted_probes,
                                td_center_out, td_leafpaths, tree_two_cop)


def worst(g, s, cap=60):
    rep = evaluate_strategy(g, s, cap)
    assert replay_transcript(g, rep.transcript)
    return rep.worst_case_rounds


def test_heawood_scripted():
    g, lab = fano_heawood()
    s = scripted_probes([[lab[1], lab[4], lab[6]], [lab[2], lab[3], lab[5]]])
    assert worst(g, s, 5) == 2


def test_leaf_probe_all_examples():
    assert worst(star(5), leaf_probe_all(star(5)), 2) == 1
    s = leaf_probe_all(path(4))
    assert s.cops == 2 and worst(path(4), s) == 1
    assert leaf_probe_all(star(6)).cops == 6


def test_leaf_probe_all_needs_tree():
    with pytest.raises(StrategyError):
        leaf_probe_all(cycle(4))


@pytest.mark.parametrize("g", [path(6), star(4), perfect_mary_tree(2, 3), fig2_h(), random_tree(10, 8)])
def test_tree_two_cop(g):
    s = tree_two_cop(g)
    w = worst(g, s)
    assert w <= g.n
    assert w >= solve_capture_time(g, 2).capture_time


def test_mary_low_examples():
    g = perfect_mary_tree(3, 2)
    assert worst(g, mary_low(g, 3, 2, 2), 10) <= 2
    g = perfect_mary_tree(7, 3)
    assert worst(g, mary_low(g, 7, 3, 3)) <= 6
    g = perfect_mary_tree(3, 1)
    assert worst(g, mary_low(g, 3, 1, 2)) <= 1


def test_mary_low_dominance():
    g = perfect_mary_tree(4, 3)
    exact = solve_capture_time(g, 2, symmetry="tree").capture_time
    assert exact <= worst(g, mary_low(g, 4, 3, 2)) <= 3 * ceil(3 / 2)


def test_mary_range_errors():
    g = perfect_mary_tree(3, 2)
    with pytest.raises(StrategyError):
        mary_low(g, 3, 2, 3)
    with pytest.raises(StrategyError):
        mary_high(g, 3, 2, 2)
    with pytest.raises(StrategyError):
        mary_high(g, 3, 2, 27)
    with pytest.raises(StrategyError):
        mary_low(path(4), 3, 2, 2)


def test_mary_high_examples():
    g = perfect_mary_tree(2, 4)
    assert worst(g, mary_high(g, 2, 4, 4)) <= 2
    g = perfect_mary_tree(2, 2)
    assert worst(g, mary_high(g, 2, 2, 4)) == 1


def test_pathwidth_examples():
    g, pd = interval_clique_path([(0, 2), (1, 3), (2, 5), (4, 6), (5, 8), (7, 9)])
    s = pathwidth_sweep(g, pd)
    assert s.cops == pd.width + 1 and worst(g, s) <= g.n
    p5 = path(5)
    assert worst(p5, pathwidth_sweep(p5, TreeDecomposition.path([[i, i + 1] for i in range(4)]))) <= 5


def test_pathwidth_never_reenters_swept_bags():
    g, pd = interval_clique_path([(0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8)])
    s = pathwidth_sweep(g, pd)
    bags = s.bags
    rep = evaluate_strategy(g, s, 20)
    swept = set()
    for i, e in enumerate(rep.transcript):
        if i > 0:
            assert not (set(e["candidates"]) & (swept - set(bags[min(i, len(bags) - 1)])))
        swept |= set(bags[min(i, len(bags) - 1)])


def test_pathwidth_rejects_bad_pd():
    with pytest.raises(StrategyError):
        pathwidth_sweep(path(4), TreeDecomposition.path([[0, 1], [2, 3], [1, 2]]))
    with pytest.raises(StrategyError):
        pathwidth_sweep(star(3), TreeDecomposition.make([[0, 1], [0, 2], [0, 3], [0]], [(3, 0), (3, 1), (3, 2)]))


@pytest.mark.parametrize("sizes,cops,bound", [((2, 3), 2, 2), ((1, 1, 3), 2, 2), ((2, 2), 2, 1)])
def test_kpartite_examples(sizes, cops, bound):
    g = complete_multipartite(sizes)
    s = kpartite_strategy(g, multipartite_parts(sizes))
    assert s.cops == cops
    assert worst(g, s) <= bound


def test_kpartite_errors():
    g = complete_multipartite([1, 1])
    with pytest.raises(StrategyError):
        kpartite_strategy(g, multipartite_parts([1, 1]))
    with pytest.raises(StrategyError):
        kpartite_strategy(cycle(5), [[0, 2], [1, 3], [4]])


@pytest.mark.parametrize("q,k,bound", [(2, 3, 2), (3, 4, 4), (3, 6, 2)])
def test_projective_examples(q, k, bound):
    g = pg2_incidence(q)
    assert worst(g, projective_two_phase(g, q, k)) <= bound


def test_projective_needs_enough_cops():
    with pytest.raises(StrategyError):
        projective_two_phase(pg2_incidence(2), 2, 2)


def test_td_leafpaths_examples():
    g = path(4)
    s = td_leafpaths(g, TreeDecomposition.path([[0, 1], [1, 2], [2, 3]]))
    assert s.cops == 3 and s.params["nominal_cops"] == 2
    assert worst(g, s) <= 2
    st = TreeDecomposition.make([[0, 1], [0, 2], [0, 3], [0]], [(3, 0), (3, 1), (3, 2)])
    assert worst(star(3), td_leafpaths(star(3), st)) <= 3
    t = perfect_mary_tree(2, 2)
    td = tree_edge_td(t)
    assert worst(t, td_leafpaths(t, td)) <= td_stats(td).leaves


@pytest.mark.parametrize("g,td", [
    (path(6), TreeDecomposition.path([[i, i + 1] for i in range(5)])),
    (perfect_mary_tree(2, 2), tree_edge_td(perfect_mary_tree(2, 2))),
    (cycle(4), minfill_td(cycle(4))),
    (grid(3, 3), minfill_td(grid(3, 3))),
])
def test_td_center_out(g, td):
    assert worst(g, td_center_out(g, td)) <= td_stats(td).radius + 1


def test_td_strategies_reject_invalid():
    bad = TreeDecomposition.path([[0, 1], [2, 3]])
    with pytest.raises(StrategyError):
        td_leafpaths(path(4), bad)
    with pytest.raises(StrategyError):
        td_center_out(path(4), bad)


def test_scripted_examples():
    assert worst(path(2), scripted_probes([[0]])) == 1
    rep = evaluate_strategy(cycle(4), scripted_probes([[0]]), 5)
    assert rep.exceeded and rep.status == "exceeded"
    with pytest.raises(StrategyError):
        scripted_probes([])


def test_cap_too_small():
    g = star(4)
    rep = evaluate_strategy(g, tree_two_cop(g), 1)
    assert rep.exceeded and rep.worst_case_rounds is None
    with pytest.raises(ValueError):
        evaluate_strategy(g, tree_two_cop(g), 0)


class _Oversized(CopStrategy):
    name = "oversized"

    def next_probe(self, g, view, memory):
        return [0, 1, 2]


class _OutOfRange(CopStrategy):
    name = "far"

    def next_probe(self, g, view, memory):
        return [99]


def test_bad_probes_diagnosed():
    with pytest.raises(StrategyError, match="only 2"):
        evaluate_strategy(path(4), _Oversized(2), 5)
    with pytest.raises(StrategyError, match="outside"):
        evaluate_strategy(path(4), _OutOfRange(1), 5)


def test_memory_is_per_branch():
    seen = []

    class Recorder(CopStrategy):
        name = "recorder"

        def initial_memory(self):
            return {"trail": ()}

        def next_probe(self, g, view, memory):
            memory["trail"] += (view.candidates,)
            seen.append((view.round, memory["trail"]))
            return [0] if view.round == 1 else [0, 2]

    g = grid(3, 3)
    assert evaluate_strategy(g, Recorder(2), 3).worst_case_rounds == 2
    # three sibling branches; a shared dict would accumulate their entries
    assert len(seen) == 4
    assert all(len(trail) == r for r, trail in seen)


def test_strategy_string_parsing():
    assert parse_strategy_spec("mary_low:m=3,h=2,k=2") == ("mary_low", {"m": "3", "h": "2", "k": "2"})
    with pytest.raises(StrategyError):
        parse_strategy_spec("bogus")
    with pytest.raises(StrategyError):
        parse_strategy_spec("mary_low:m3")
    g = perfect_mary_tree(3, 2)
    assert build_strategy("mary_low:m=3,h=2,k=2", g).cops == 2
    assert build_strategy("scripted_probes:probes=0.7/1", grid(8, 8)).cops == 2
    assert build_strategy("kpartite_strategy:sizes=2.3", complete_multipartite([2, 3])).cops == 2
    with pytest.raises(StrategyError):
        build_strategy("td_leafpaths", path(4))
    with pytest.raises(StrategyError):
        build_strategy("mary_low:m=3,h=2", g)


def test_dominance_small_grid():
    cases = [(star(4), tree_two_cop(star(4))), (fig2_h(), tree_two_cop(fig2_h())),
             (complete_multipartite([2, 3]), kpartite_strategy(complete_multipartite([2, 3]), [[0, 1], [2, 3, 4]]))]
    for g, s in cases:
        exact = solve_capture_time(g, s.cops)
        assert worst(g, s) >= exact.capture_time


@pytest.mark.parametrize("seed", range(10))
def test_leaf_normalization_random(seed):
    t = random_tree(4 + seed % 7, 700 + seed)
    a = solve_capture_time(t, 2).capture_time
    b = solve_capture_time(t, 2, probe_vertices=t.leaves).capture_time
    assert a == b
