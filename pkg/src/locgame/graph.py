"""Immutable connected graphs with a dense hop-distance matrix."""
from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .bits import mask_of, members, n_words


class GraphError(ValueError):
    code = "graph"


class LoopError(GraphError):
    code = "loop"


class DuplicateEdgeError(GraphError):
    code = "duplicate_edge"


class VertexRangeError(GraphError):
    code = "vertex_range"


class DisconnectedError(GraphError):
    code = "disconnected"


class EdgeListFormatError(GraphError):
    code = "edge_list_format"


class Graph:
    """Simple undirected connected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v`` and ``dist`` the
    read-only ``n x n`` matrix of hop distances.  Use :func:`build_graph` rather
    than calling the constructor directly.
    """

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...], dist: np.ndarray, name: str = ""):
        self.n = n
        self.adjacency = adjacency
        dist.setflags(write=False)
        self.dist = dist
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.n else 0

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if len(self.adjacency[v]) == 1)

    @cached_property
    def is_tree(self) -> bool:
        return self.m == self.n - 1

    @cached_property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def closed_nbr_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(a) | (1 << v) for v, a in enumerate(self.adjacency))

    @cached_property
    def nbr_words(self) -> np.ndarray:
        """Closed neighbourhoods packed as ``(n, W)`` uint64 words."""
        W = n_words(self.n)
        out = np.zeros((self.n, W), dtype=np.uint64)
        for v, a in enumerate(self.adjacency):
            for u in (v, *a):
                out[v, u >> 6] |= np.uint64(1) << np.uint64(u & 63)
        return out

    @cached_property
    def rings(self) -> tuple[tuple[int, ...], ...]:
        """``rings[u][d]`` is the bitmask of vertices at distance exactly ``d`` from ``u``."""
        out = []
        for u in range(self.n):
            row = self.dist[u]
            out.append(tuple(mask_of(np.flatnonzero(row == d).tolist()) for d in range(int(row.max()) + 1)))
        return tuple(out)

    def spread_mask(self, mask: int) -> int:
        nbr = self.closed_nbr_masks
        out = 0
        for v in members(mask):
            out |= nbr[v]
        return out

    def induced(self, vertices: Iterable[int], name: str = "") -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..h-1`` plus the old-vertex list."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(edges, len(keep), name=name), keep

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def build_graph(edges: Iterable[Sequence[int]], n: int, name: str = "") -> Graph:
    """Validate an edge list and precompute all-pairs BFS distances.

    Raises :class:`LoopError`, :class:`DuplicateEdgeError`,
    :class:`VertexRangeError` or :class:`DisconnectedError`.
    """
    if n < 1:
        raise VertexRangeError(f"graph needs at least one vertex, got n={n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdgeError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adjacency])
    indices = np.fromiter((v for a in adjacency for v in a), dtype=np.int64, count=int(indptr[-1]))
    dist = _accel.bfs_all_pairs(indptr, indices, n)
    if (dist < 0).any():
        unreached = int(np.flatnonzero(dist[0] < 0)[0])
        raise DisconnectedError(f"graph is disconnected (vertex {unreached} unreachable from 0)")
    return Graph(n, adjacency, dist, name)


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-indexed, ``u < v``)."""
    rows = [(i + 1, line.split()) for i, line in enumerate(text.splitlines())]
    rows = [(no, parts) for no, parts in rows if parts and not parts[0].startswith("#")]
    if not rows:
        raise EdgeListFormatError("empty edge list")
    no, header = rows[0]
    try:
        n, m = (int(x) for x in header)
    except ValueError:
        raise EdgeListFormatError(f"line {no}: header must be 'n m', got {' '.join(header)!r}") from None
    body = rows[1:]
    if len(body) != m:
        raise EdgeListFormatError(f"header declares {m} edges but {len(body)} edge lines follow")
    edges = []
    for no, parts in body:
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {no}: expected 'u v', got {' '.join(parts)!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(f"line {no}: non-integer vertex in {' '.join(parts)!r}") from None
        if not u < v:
            raise EdgeListFormatError(f"line {no}: endpoints must satisfy u < v, got {u} {v}")
        if v >= n or u < 0:
            raise EdgeListFormatError(f"line {no}: vertex out of range 0..{n - 1}")
        edges.append((u, v))
    return build_graph(edges, n, name=name)


def read_edge_list(path) -> Graph:
    path = Path(path)
    return parse_edge_list(path.read_text(), name=path.stem)


# ---------------------------------------------------------------------------
# special induced subgraphs
# ---------------------------------------------------------------------------

def _components(n: int, adjacency, allowed_edge) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adjacency[u]:
                if not seen[v] and allowed_edge(u, v):
                    seen[v] = True
                    stack.append(v)
        comps.append(comp)
    return comps


def is_special_subgraph(g: Graph, sub: Iterable[int]) -> bool:
    """True iff G[sub] is connected and every path between sub-vertices stays in sub.

    Checked via the equivalent condition: after deleting the edges of G[sub],
    each component of G holds exactly one vertex of ``sub``.
    """
    h = set(sub)
    if not h:
        raise ValueError("subgraph vertex set must be nonempty")
    inner = _components(g.n, g.adjacency, lambda u, v: u in h and v in h)
    if len([c for c in inner if c[0] in h]) != 1:
        return False
    outer = _components(g.n, g.adjacency, lambda u, v: not (u in h and v in h))
    return all(sum(1 for v in c if v in h) == 1 for c in outer)


def special_retraction(g: Graph, sub: Iterable[int]) -> dict[int, int]:
    """Map each vertex to the unique ``sub`` vertex of its component in G - E(G[sub])."""
    h = set(sub)
    if not is_special_subgraph(g, h):
        raise ValueError("vertex set does not induce a special subgraph")
    f = {}
    for comp in _components(g.n, g.adjacency, lambda u, v: not (u in h and v in h)):
        (anchor,) = [v for v in comp if v in h]
        for v in comp:
            f[v] = anchor
    return f
