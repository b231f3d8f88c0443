"""Deterministic generators for the graph families used by the solver and suite.

Vertex numbering is part of each generator's contract:

* ``path``/``cycle``: 0..n-1 along the path/cycle.
* ``star(n)``: centre 0, leaves 1..n.
* ``complete_multipartite(sizes)``: parts are consecutive blocks in the given order.
* ``perfect_mary_tree(m, h)``: breadth-first by level, children of ``v`` are
  ``m*v+1 .. m*v+m``.
* ``grid(r, c)``: row-major, 0-indexed cell ``(i, j)`` is ``i*c + j``.
* ``hypercube(d)``: vertex = value of its binary label.
* ``cartesian_product(G, H)``: ``(a, b)`` is ``a*H.n + b``.
* ``fig2_h``: root 0, its children 1,2,3, then 4,5,6 below them, then leaves
  (7,8) under 4, (9,10) under 5, (11,12) under 6.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, build_graph


class FamilyParamError(GraphError):
    code = "family_params"


def path(n: int) -> Graph:
    if n < 1:
        raise FamilyParamError("path needs n >= 1")
    return build_graph([(i, i + 1) for i in range(n - 1)], n, name=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyParamError("cycle needs n >= 3")
    return build_graph([(i, (i + 1) % n) for i in range(n)], n, name=f"C{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise FamilyParamError("complete graph needs n >= 1")
    return build_graph(list(combinations(range(n), 2)), n, name=f"K{n}")


def star(n: int) -> Graph:
    if n < 1:
        raise FamilyParamError("star needs n >= 1 leaves")
    return build_graph([(0, i) for i in range(1, n + 1)], n + 1, name=f"K1,{n}")


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < 1:
        raise FamilyParamError("part sizes must be positive")
    if len(sizes) < 2 and sizes[0] > 1:
        raise FamilyParamError("a single part with more than one vertex is disconnected")
    part = []
    for i, s in enumerate(sizes):
        part += [i] * s
    n = len(part)
    edges = [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]]
    return build_graph(edges, n, name="K" + ",".join(map(str, sizes)))


def multipartite_parts(sizes: Sequence[int]) -> list[list[int]]:
    """Vertex blocks of :func:`complete_multipartite` for the same sizes."""
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def perfect_mary_tree(m: int, h: int) -> Graph:
    if m < 1 or h < 0:
        raise FamilyParamError("perfect m-ary tree needs m >= 1 and h >= 0")
    n = sum(m**i for i in range(h + 1))
    edges = [((v - 1) // m, v) for v in range(1, n)]
    return build_graph(edges, n, name=f"T{m}^{h}")


def mary_level(m: int, depth: int) -> range:
    """Vertex range of the given level in :func:`perfect_mary_tree` numbering."""
    start = sum(m**i for i in range(depth))
    return range(start, start + m**depth)


def mary_children(m: int, v: int) -> range:
    return range(m * v + 1, m * v + m + 1)


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise FamilyParamError("grid needs positive dimensions")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(edges, rows * cols, name=f"P{rows}xP{cols}")


def hypercube(d: int) -> Graph:
    if d < 0:
        raise FamilyParamError("hypercube dimension must be >= 0")
    n = 1 << d
    edges = [(v, v | (1 << b)) for v in range(n) for b in range(d) if not v >> b & 1]
    return build_graph(edges, n, name=f"Q{d}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    edges = []
    for a in range(g.n):
        for u, v in h.edges:
            edges.append((a * h.n + u, a * h.n + v))
    for u, v in g.edges:
        for b in range(h.n):
            edges.append((u * h.n + b, v * h.n + b))
    return build_graph(edges, g.n * h.n, name=f"{g.name}x{h.name}")


def prufer_to_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(n) if degree[v] == 1]
    edges.append((u, v))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree from a seeded Prufer sequence."""
    if n < 1:
        raise FamilyParamError("random tree needs n >= 1")
    if seed is None:
        raise FamilyParamError("random_tree requires an explicit seed")
    if n == 1:
        return build_graph([], 1, name="tree1")
    if n == 2:
        return build_graph([(0, 1)], 2, name="tree2")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return build_graph(prufer_to_edges(seq, n), n, name=f"tree{n}s{seed}")


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded random spanning tree plus independent extra edges with probability ``p``."""
    rng = random.Random(seed)
    tree = random_tree(n, rng.randrange(2**31)) if n > 1 else None
    edges = set(tree.edges) if tree else set()
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return build_graph(sorted(edges), n, name=f"rand{n}s{seed}")


def interval_graph(intervals: Sequence[Sequence[float]]) -> Graph:
    """Intersection graph of closed intervals; vertex i is ``intervals[i]``."""
    from .decomposition import interval_clique_path

    return interval_clique_path(intervals)[0]


def fig2_h() -> Graph:
    """The 13-vertex spider with three length-2 legs, each ending in two leaves."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6),
             (4, 7), (4, 8), (5, 9), (5, 10), (6, 11), (6, 12)]
    return build_graph(edges, 13, name="H")


def pg2_incidence(q: int) -> Graph:
    from .designs import build_pg2, incidence_graph

    return incidence_graph(build_pg2(q))


FAMILIES = {
    "path": (path, (int,)),
    "cycle": (cycle, (int,)),
    "complete": (complete, (int,)),
    "star": (star, (int,)),
    "complete_multipartite": (complete_multipartite, "sizes"),
    "perfect_mary_tree": (perfect_mary_tree, (int, int)),
    "mary": (perfect_mary_tree, (int, int)),
    "grid": (grid, (int, int)),
    "hypercube": (hypercube, (int,)),
    "random_tree": (random_tree, (int, int)),
    "interval_graph": (interval_graph, "intervals"),
    "fig2_H": (fig2_h, ()),
    "pg2": (pg2_incidence, (int,)),
    "heawood": (lambda: pg2_incidence(2), ()),
}


def gen_family(family: str, *params) -> Graph:
    """Build a named family from positional parameters (strings or numbers).

    ``complete_multipartite`` takes the part sizes; ``interval_graph`` takes
    ``lo,hi`` pairs; ``random_tree`` takes ``n seed``; ``cartesian_product``
    takes two family specs joined by ``x`` e.g. ``path:8 x path:8``.
    """
    if family == "cartesian_product":
        left, right = _split_product(params)
        return cartesian_product(gen_family(*left), gen_family(*right))
    if family not in FAMILIES:
        raise FamilyParamError(f"unknown family {family!r}; choose from {', '.join(sorted(FAMILIES))}")
    fn, sig = FAMILIES[family]
    try:
        if sig == "sizes":
            return fn([int(x) for x in params])
        if sig == "intervals":
            ivs = []
            for p in params:
                lo, hi = str(p).split(",")
                ivs.append((float(lo), float(hi)))
            return fn(ivs)
        if len(params) != len(sig):
            raise FamilyParamError(f"{family} expects {len(sig)} parameter(s), got {len(params)}")
        return fn(*(t(x) for t, x in zip(sig, params)))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise FamilyParamError(f"bad parameters for {family}: {exc}") from None


def _split_product(params):
    params = [str(p) for p in params]
    if "x" not in params:
        raise FamilyParamError("cartesian_product params look like: path:8 x path:8")
    i = params.index("x")

    def parse(chunk):
        if len(chunk) != 1:
            raise FamilyParamError("each factor is family:param:param")
        name, *args = chunk[0].split(":")
        return (name, *args)

    return parse(params[:i]), parse(params[i + 1:])
