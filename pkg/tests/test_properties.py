"""Property-based checks over random small graphs."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from locgame.bits import members
from locgame.game import CAPTURED, partition_by_distance, spread, step
from locgame.generators import random_connected_graph, random_tree
from locgame.graph import is_special_subgraph, special_retraction
from locgame.solver import is_resolving, metric_dimension, solve_capture_time

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

graphs = st.builds(random_connected_graph, st.integers(2, 12), st.sampled_from([0.2, 0.35, 0.5, 0.8]),
                   st.integers(0, 10**6))
trees = st.builds(random_tree, st.integers(2, 10), st.integers(0, 10**6))


@SETTINGS
@given(graphs, st.data())
def test_partition_matches_naive_grouping(g, data):
    S = data.draw(st.integers(1, g.all_mask))
    probe = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3)))
    out = partition_by_distance(g, S, probe)
    naive = {}
    for v in members(S):
        naive.setdefault(tuple(int(g.dist[u, v]) for u in probe), set()).add(v)
    assert {vec: set(members(c)) for vec, c in out.classes} == naive
    union = 0
    for _, c in out.classes:
        assert c and not (union & c)
        union |= c
    assert union == S


@SETTINGS
@given(graphs, st.data())
def test_spread_monotone(g, data):
    C = data.draw(st.integers(1, g.all_mask))
    once = spread(g, C)
    assert C & once == C and spread(g, once) & once == once


@SETTINGS
@given(graphs, st.data())
def test_step_never_empty(g, data):
    S = data.draw(st.integers(1, g.all_mask))
    probe = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=2)))
    out = step(g, S, probe)
    assert out == CAPTURED or len(out) >= 1


@SETTINGS
@given(trees, st.data())
def test_subtrees_special_and_retraction(t, data):
    start = data.draw(st.integers(0, t.n - 1))
    keep, frontier = {start}, set(t.adjacency[start])
    grow = data.draw(st.integers(0, t.n - 1))
    while grow and frontier:
        v = min(frontier)
        keep.add(v)
        frontier = (frontier | set(t.adjacency[v])) - keep
        grow -= 1
    assert is_special_subgraph(t, keep)
    f = special_retraction(t, keep)
    for u in range(t.n):
        if u not in keep:
            for v in keep:
                assert t.dist[u, v] == t.dist[u, f[u]] + t.dist[f[u], v]


@settings(max_examples=25, deadline=None)
@given(st.builds(random_connected_graph, st.integers(2, 8), st.sampled_from([0.3, 0.5]), st.integers(0, 10**6)))
def test_beta_gives_one_round(g):
    beta, wit = metric_dimension(g)
    assert is_resolving(g, wit)
    assert solve_capture_time(g, beta).capture_time == 1
