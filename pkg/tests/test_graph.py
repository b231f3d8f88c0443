import numpy as np
import pytest

from locgame.generators import (FamilyParamError, cartesian_product, complete_multipartite, cycle,
                                fig2_h, gen_family, grid, hypercube, path, perfect_mary_tree,
                                pg2_incidence, random_tree, star)
from locgame.graph import (DisconnectedError, DuplicateEdgeError, EdgeListFormatError, LoopError,
                           VertexRangeError, build_graph, format_edge_list, is_special_subgraph,
                           parse_edge_list, read_edge_list, special_retraction, write_edge_list)


def test_single_edge():
    g = build_graph([(0, 1)], 2)
    assert g.dist[0, 1] == 1


def test_path_distance():
    assert path(4).dist[0, 3] == 3


def test_heawood_shape():
    g = pg2_incidence(2)
    assert g.n == 14
    assert all(len(a) == 3 for a in g.adjacency)
    assert g.diameter == 3


@pytest.mark.parametrize("edges,n,err", [
    ([(0, 0)], 1, LoopError),
    ([(0, 1), (1, 0)], 2, DuplicateEdgeError),
    ([(0, 1), (2, 3)], 4, DisconnectedError),
    ([(0, 5)], 2, VertexRangeError),
])
def test_build_graph_errors(edges, n, err):
    with pytest.raises(err) as info:
        build_graph(edges, n)
    assert info.value.code


def test_error_codes_distinct():
    codes = {LoopError.code, DuplicateEdgeError.code, DisconnectedError.code, VertexRangeError.code}
    assert len(codes) == 4


def test_mary_tree_counts():
    g = perfect_mary_tree(2, 2)
    assert g.n == 7 and len(g.leaves) == 4


def test_fig2():
    g = fig2_h()
    assert g.n == 13 and g.max_degree == 3 and len(g.leaves) == 6


def test_grid_diameter():
    g = grid(8, 8)
    assert g.n == 64 and g.diameter == 14


def test_numbering_conventions():
    assert star(4).adjacency[0] == (1, 2, 3, 4)
    assert set(perfect_mary_tree(3, 2).adjacency[1]) == {0, 4, 5, 6}
    g = grid(3, 4)
    assert g.dist[0, 4] == 1 and g.dist[3, 4] == 4
    q = hypercube(3)
    assert q.dist[0, 7] == 3 and q.dist[1, 3] == 1
    assert cartesian_product(path(3), path(3)).dist[0, 8] == 4


def test_multipartite():
    g = complete_multipartite([2, 3])
    assert g.m == 6 and 1 not in g.adjacency[0]


@pytest.mark.parametrize("bad", [("perfect_mary_tree", 0, 2), ("perfect_mary_tree", 2, -1), ("path", 0),
                                 ("cycle", 2), ("nosuch",), ("star",)])
def test_family_param_errors(bad):
    with pytest.raises(FamilyParamError):
        gen_family(*bad)


def test_random_tree_deterministic():
    a, b = random_tree(10, 5), random_tree(10, 5)
    assert a.edges == b.edges and a.is_tree


def test_gen_family_strings():
    assert gen_family("mary", "3", "2").n == 13
    assert gen_family("complete_multipartite", "1", "2").n == 3
    assert gen_family("cartesian_product", "path:3", "x", "cycle:4").n == 12
    assert gen_family("interval_graph", "0,1", "1,2").n == 2


def test_metric_axioms_all_families():
    graphs = [path(7), cycle(9), star(5), perfect_mary_tree(3, 2), grid(8, 8), hypercube(4),
              fig2_h(), pg2_incidence(3), complete_multipartite([1, 2, 3])]
    for g in graphs:
        d = g.dist.astype(np.int64)
        assert (np.diag(d) == 0).all() and (d == d.T).all() and (d >= 0).all()
        # triangle inequality through every midpoint
        assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()
        adj = np.zeros_like(d)
        for u, v in g.edges:
            adj[u, v] = adj[v, u] = 1
        assert ((d == 1) == (adj == 1)).all()


def test_edge_list_roundtrip(tmp_path):
    g = fig2_h()
    p = tmp_path / "h.txt"
    write_edge_list(g, p)
    h = read_edge_list(p)
    assert h.edges == g.edges and h.n == g.n
    assert format_edge_list(g).splitlines()[0] == "13 12"


@pytest.mark.parametrize("text,line", [
    ("3 2\n0 1\n", None),
    ("2 1\n1 0\n", 2),
    ("x 1\n", 1),
    ("2 1\n0 1 5\n", 2),
    ("2 1\n0 a\n", 2),
])
def test_edge_list_errors(text, line):
    with pytest.raises(EdgeListFormatError) as info:
        parse_edge_list(text)
    if line is not None:
        assert f"line {line}" in str(info.value)


def test_special_subgraph_examples():
    t = random_tree(9, 3)
    assert is_special_subgraph(t, [0] + list(t.adjacency[0]))
    assert not is_special_subgraph(cycle(4), [0, 1])
    g = pg2_incidence(2)
    assert is_special_subgraph(g, range(g.n))


def test_retraction_star():
    f = special_retraction(star(4), [0])
    assert all(f[v] == 0 for v in range(1, 5))


def test_retraction_fig2_branch():
    g = fig2_h()
    sub = [v for v in range(13) if v not in (4, 7, 8)]
    f = special_retraction(g, sub)
    assert f[4] == f[7] == f[8] == 1
    for u in (4, 7, 8):
        for v in sub:
            assert g.dist[u, v] == g.dist[u, f[u]] + g.dist[f[u], v]


def test_retraction_rejects_non_special():
    with pytest.raises(ValueError):
        special_retraction(cycle(4), [0, 1])
