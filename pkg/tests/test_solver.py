import pytest

from locgame.bits import members
from locgame.game import CAPTURED, step
from locgame.generators import (complete, cycle, fig2_h, grid, hypercube, path, perfect_mary_tree,
                                pg2_incidence, random_connected_graph, random_tree, star)
from locgame.graph import build_graph
from locgame.solver import (ABORTED, FINITE, ROBBER_WINS, Budget, is_resolving, localization_number,
                            metric_dimension, probe_count, solve_capture_time)


def test_star_k1():
    res = solve_capture_time(star(4), 1)
    assert res.outcome == FINITE and res.capture_time == 3


def test_fig2_k1():
    assert solve_capture_time(fig2_h(), 1).capture_time == 3


def test_c4_robber_wins():
    res = solve_capture_time(cycle(4), 1)
    assert res.outcome == ROBBER_WINS and res.capture_time is None


def test_heawood_k3():
    assert solve_capture_time(pg2_incidence(2), 3).capture_time == 2


def test_single_vertex():
    g = build_graph([], 1)
    assert solve_capture_time(g, 1).capture_time == 1


def test_budget_abort():
    res = solve_capture_time(pg2_incidence(3), 2, Budget(max_states=50))
    assert res.outcome == ABORTED and "state budget" in res.reason
    res = solve_capture_time(pg2_incidence(2), 3, Budget(max_probes=1000))
    assert res.outcome == ABORTED and "probe budget" in res.reason


def test_budget_validation():
    with pytest.raises(ValueError):
        Budget(max_states=0)
    with pytest.raises(ValueError):
        solve_capture_time(path(3), 0)


def test_as_dict_keys():
    d = solve_capture_time(star(3), 1).as_dict("K1,3")
    assert list(d) == ["graph", "k", "outcome", "capture_time", "states", "probes"]


def test_localization_examples():
    assert localization_number(pg2_incidence(2)).zeta == 3
    loc = localization_number(cycle(4))
    assert loc.zeta == 2 and loc.table[1].outcome == ROBBER_WINS


@pytest.mark.parametrize("seed", range(8))
def test_trees_zeta_at_most_two(seed):
    t = random_tree(6 + seed % 7, seed)
    assert localization_number(t).zeta in (1, 2)


def test_metric_dimension_examples():
    assert metric_dimension(path(5)) == (1, (0,))
    assert metric_dimension(star(3))[0] == 2
    size, wit = metric_dimension(grid(8, 8))
    assert size == 2 and wit == (0, 7)


def test_is_resolving_examples():
    g = cycle(5)
    assert is_resolving(g, range(g.n))
    assert not is_resolving(star(3), [0])
    assert is_resolving(hypercube(3), [0, 4, 2, 1])


def _worst_case(g, witness, S):
    probe = witness[S]
    out = step(g, S, probe)
    if out == CAPTURED:
        return 1
    return 1 + max(_worst_case(g, witness, s.candidates) for s in out)


@pytest.mark.parametrize("g,k", [(star(5), 1), (fig2_h(), 1), (pg2_incidence(2), 3), (cycle(5), 2),
                                 (perfect_mary_tree(2, 3), 2), (complete(4), 3), (grid(3, 3), 2)])
def test_witness_replay(g, k):
    res = solve_capture_time(g, k)
    assert res.finite
    assert _worst_case(g, res.witness, g.all_mask) == res.capture_time


def test_tie_break_lexicographic():
    # every singleton probe on P3 end-vertex resolves; 0 is least
    assert solve_capture_time(path(3), 1).witness[0b111] == (0,)


def test_speedup_monotone_in_k():
    for g in (fig2_h(), grid(3, 3), random_connected_graph(8, 0.3, 1)):
        times = [solve_capture_time(g, k).capture_time for k in range(1, 5)]
        finite = [t for t in times if t is not None]
        assert finite == sorted(finite, reverse=True)


@pytest.mark.parametrize("seed", range(6))
def test_star_lower_bound(seed):
    t = random_tree(9, 40 + seed)
    for k in range(1, t.max_degree):
        res = solve_capture_time(t, k, symmetry="tree")
        if res.finite:
            assert res.capture_time >= -(-(t.max_degree - 1) // k)


@pytest.mark.parametrize("seed", range(20))
def test_tree_symmetry_matches_plain(seed):
    t = random_tree(5 + seed % 7, 300 + seed)
    for k in (1, 2, 3):
        a = solve_capture_time(t, k)
        b = solve_capture_time(t, k, symmetry="tree")
        assert (a.outcome, a.capture_time) == (b.outcome, b.capture_time)


def test_tree_symmetry_rejects_non_tree():
    with pytest.raises(ValueError):
        solve_capture_time(cycle(5), 2, symmetry="tree")


def test_probe_vertices_restriction():
    g = star(4)
    res = solve_capture_time(g, 1, probe_vertices=[0])
    assert res.outcome == ROBBER_WINS


def test_probe_count():
    assert probe_count(5, 2) == 15


def test_backends_agree():
    g = fig2_h()
    a = solve_capture_time(g, 1, backend="numpy")
    b = solve_capture_time(g, 1)
    assert (a.capture_time, a.states, sorted(a.witness.items())) == (b.capture_time, b.states, sorted(b.witness.items()))
    assert members(1 << 3) == [3]
