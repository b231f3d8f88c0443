"""Tree and path decompositions: validation, statistics and simple constructions."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import DisconnectedError, Graph, build_graph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]
    kind: str = "tree"

    @classmethod
    def make(cls, bags: Iterable[Iterable[int]], edges: Iterable[Sequence[int]] = (), kind: str = "tree"):
        return cls(tuple(frozenset(int(v) for v in b) for b in bags),
                   tuple((int(a), int(b)) for a, b in edges), kind)

    @classmethod
    def path(cls, bags: Iterable[Iterable[int]]):
        bags = list(bags)
        return cls.make(bags, [(i, i + 1) for i in range(len(bags) - 1)], kind="path")

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return [sorted(x) for x in nb]

    def to_json(self) -> str:
        return json.dumps({"bags": [sorted(b) for b in self.bags],
                           "edges": [list(e) for e in self.edges], "kind": self.kind})

    @classmethod
    def from_json(cls, text: str) -> "TreeDecomposition":
        data = json.loads(text)
        return cls.make(data["bags"], data.get("edges", []), data.get("kind", "tree"))


def _tree_violation(td: TreeDecomposition) -> str | None:
    m = len(td.bags)
    if m == 0:
        return "no bags"
    for a, b in td.edges:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            return f"tree edge ({a}, {b}) is not between two distinct bags"
    if len(td.edges) != m - 1 or len(set(map(frozenset, td.edges))) != m - 1:
        return "bag edges do not form a tree"
    nb = td.neighbors()
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != m:
        return "bag edges do not form a tree"
    if td.kind == "path":
        if any(len(x) > 2 for x in nb):
            return "kind=path but the bag tree branches"
    elif td.kind != "tree":
        return f"unknown kind {td.kind!r}"
    return None


def td_violation(g: Graph, td: TreeDecomposition) -> str | None:
    """First violated decomposition property as a message, or ``None``."""
    msg = _tree_violation(td)
    if msg:
        return msg
    for i, b in enumerate(td.bags):
        if any(not 0 <= v < g.n for v in b):
            return f"bag {i} holds a vertex outside 0..{g.n - 1}"
    covered = set().union(*td.bags)
    missing = sorted(set(range(g.n)) - covered)
    if missing:
        return f"coverage: vertex {missing[0]} is in no bag"
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            return f"edge containment: no bag holds edge ({u}, {v})"
    nb = td.neighbors()
    for v in range(g.n):
        holding = [i for i, b in enumerate(td.bags) if v in b]
        seen = {holding[0]}
        stack = [holding[0]]
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y not in seen and v in td.bags[y]:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holding):
            return f"running intersection: bags holding vertex {v} are not connected"
    return None


def validate_td(g: Graph, td: TreeDecomposition) -> bool:
    return td_violation(g, td) is None


@dataclass(frozen=True)
class TDStats:
    width: int
    radius: int
    center: int
    leaves: int


def bag_eccentricities(td: TreeDecomposition) -> list[int]:
    nb = td.neighbors()
    out = []
    for s in range(len(td.bags)):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nb[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        out.append(max(dist.values()))
    return out


def td_stats(td: TreeDecomposition) -> TDStats:
    """Width, radius and (least-index) centre bag of the bag tree, and its leaf count."""
    ecc = bag_eccentricities(td)
    radius = min(ecc)
    center = ecc.index(radius)
    nb = td.neighbors()
    leaves = 1 if len(td.bags) == 1 else sum(1 for x in nb if len(x) == 1)
    return TDStats(td.width, radius, center, leaves)


def reduce_td(td: TreeDecomposition) -> TreeDecomposition:
    """Contract every bag contained in a neighbouring bag; validity is preserved."""
    bags = [set(b) for b in td.bags]
    alive = set(range(len(bags)))
    nb = {i: set(x) for i, x in enumerate(td.neighbors())}
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            host = next((j for j in sorted(nb[i]) if bags[i] <= bags[j]), None)
            if host is None:
                continue
            for j in nb[i]:
                if j != host:
                    nb[j].discard(i)
                    nb[j].add(host)
                    nb[host].add(j)
            nb[host].discard(i)
            alive.discard(i)
            del nb[i]
            changed = True
            break
    order = sorted(alive)
    if td.kind == "path":
        # keep path order
        order = sorted(alive)
    index = {old: new for new, old in enumerate(order)}
    edges = sorted({tuple(sorted((index[i], index[j]))) for i in order for j in nb[i]})
    return TreeDecomposition(tuple(frozenset(bags[i]) for i in order), tuple(edges), td.kind)


def path_order(td: TreeDecomposition) -> list[int]:
    """Bag indices in path order starting from the lower-index end."""
    nb = td.neighbors()
    if len(td.bags) == 1:
        return [0]
    ends = [i for i, x in enumerate(nb) if len(x) == 1]
    order = [min(ends)]
    prev = -1
    while len(order) < len(td.bags):
        cur = order[-1]
        nxt = [y for y in nb[cur] if y != prev]
        prev = cur
        order.append(nxt[0])
    return order


def minfill_td(g: Graph) -> TreeDecomposition:
    """Decomposition from a min-fill elimination order (ties by least vertex)."""
    adj = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    order: list[int] = []
    bag_of: dict[int, frozenset[int]] = {}
    while alive:
        best, best_fill = None, None
        for v in sorted(alive):
            nb = sorted(adj[v])
            fill = sum(1 for i in range(len(nb)) for j in range(i + 1, len(nb)) if nb[j] not in adj[nb[i]])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        nb = adj[best]
        bag_of[best] = frozenset(nb | {best})
        for a in nb:
            for b in nb:
                if a != b:
                    adj[a].add(b)
            adj[a].discard(best)
        alive.discard(best)
        order.append(best)
        adj[best] = set()
    pos = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    edges = []
    for i, v in enumerate(order):
        later = [u for u in bags[i] if u != v]
        if later:
            j = min(pos[u] for u in later)
            edges.append((i, j))
        elif i != len(order) - 1:
            # a vertex eliminated last in its component; link components in order
            edges.append((i, len(order) - 1))
    return reduce_td(TreeDecomposition(tuple(bags), tuple(edges), "tree"))


def interval_clique_path(intervals: Sequence[Sequence[float]]) -> tuple[Graph, TreeDecomposition]:
    """Intersection graph of closed intervals and its clique path.

    Bags are the interval sets stabbing each left endpoint, in increasing
    order, with bags contained in a neighbour contracted away.
    """
    ivs = [(float(a), float(b)) for a, b in intervals]
    if not ivs:
        raise ValueError("need at least one interval")
    for a, b in ivs:
        if a > b:
            raise ValueError(f"interval ({a}, {b}) has lo > hi")
    n = len(ivs)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if max(ivs[i][0], ivs[j][0]) <= min(ivs[i][1], ivs[j][1])]
    try:
        g = build_graph(edges, n, name="interval")
    except DisconnectedError:
        raise ValueError("intervals do not form a connected intersection graph") from None
    points = sorted({a for a, _ in ivs})
    bags = [frozenset(i for i, (a, b) in enumerate(ivs) if a <= x <= b) for x in points]
    td = reduce_td(TreeDecomposition.path(bags))
    return g, td


def tree_edge_td(g: Graph, root: int = 0) -> TreeDecomposition:
    """Decomposition of a tree with one bag per edge, linked through shared vertices."""
    if not g.is_tree or g.n < 2:
        raise ValueError("tree_edge_td needs a tree with an edge")
    parent = {root: None}
    order = [root]
    for u in order:
        for v in g.adjacency[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
    bag_index = {}
    bags, edges = [], []
    for v in order[1:]:
        bag_index[v] = len(bags)
        bags.append(frozenset((parent[v], v)))
    first_child: dict[int, int] = {}
    for v in order[1:]:
        p = parent[v]
        if p in bag_index:
            edges.append((bag_index[p], bag_index[v]))
        elif p in first_child:
            edges.append((first_child[p], bag_index[v]))
        else:
            first_child[p] = bag_index[v]
    return TreeDecomposition(tuple(bags), tuple(edges), "tree")
