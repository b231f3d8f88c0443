"""Fixed cop strategies and an exhaustive evaluator against the worst robber.

A strategy sees what the cops know at the start of a round (a :class:`View`)
and returns the probe for that round.  Private memory is a dict the strategy
may update; the evaluator copies it for every robber branch so that branches
never share state.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from math import ceil, log
from typing import Sequence

from .bits import mask_of, members, popcount
from .decomposition import TreeDecomposition, path_order, reduce_td, td_stats, td_violation
from .game import KnowledgeState, normalize_probe, partition_by_distance
from .generators import mary_children
from .graph import Graph
from .treesym import tree_centers


class StrategyError(ValueError):
    pass


class ScriptExhausted(Exception):
    """Raised by a scripted strategy that has no probe left."""


@dataclass(frozen=True)
class View:
    state: KnowledgeState
    round: int
    prev_class: int | None = None
    prev_probe: tuple[int, ...] | None = None
    prev_vector: tuple[int, ...] | None = None

    @property
    def candidates(self) -> int:
        return self.state.candidates


class CopStrategy:
    """Base class: ``next_probe(g, view, memory)`` returns a probe of at most ``cops`` vertices."""

    name = "strategy"

    def __init__(self, cops: int, params: dict | None = None):
        self.cops = int(cops)
        self.params = dict(params or {})

    def initial_memory(self) -> dict:
        return {}

    def next_probe(self, g: Graph, view: View, memory: dict) -> Sequence[int]:
        raise NotImplementedError

    def bound(self) -> int | None:
        """Round bound claimed by the construction this strategy follows."""
        return None

    def describe(self) -> dict:
        return {"name": self.name, "cops": self.cops, "params": self.params, "bound": self.bound()}


@dataclass
class EvalReport:
    worst_case_rounds: int | None
    exceeded: bool
    cap: int
    cops: int
    transcript: list[dict] = field(default_factory=list)
    plays: int = 0

    @property
    def status(self) -> str:
        return "exceeded" if self.exceeded else "captured"

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "worst_case_rounds": self.worst_case_rounds,
            "cap": self.cap,
            "cops": self.cops,
            "transcript": self.transcript,
        }


def evaluate_strategy(g: Graph, strategy: CopStrategy, round_cap: int) -> EvalReport:
    """Worst case over every robber choice with the cops playing ``strategy``.

    The returned transcript is one play achieving the worst case (or the
    first play found that survives ``round_cap``).
    """
    if round_cap < 1:
        raise ValueError("round_cap must be at least 1")
    k = strategy.cops
    counter = [0]

    def play(view: View, memory: dict):
        r = view.round
        S = view.candidates
        try:
            raw = strategy.next_probe(g, view, memory)
        except ScriptExhausted:
            return None, []
        try:
            probe = normalize_probe(g, raw, k)
        except ValueError as exc:
            raise StrategyError(f"{strategy.name} round {r}: {exc}") from None
        outcome = partition_by_distance(g, S, probe)
        multi = outcome.multi_classes()
        entry = {"round": r, "probe": list(probe), "candidates": members(S)}
        if not multi:
            counter[0] += 1
            return r, [dict(entry, captured=True)]
        worst = None
        for vec, cls in multi:
            nxt = g.spread_mask(cls)
            full = dict(entry, vector=list(vec), cls=members(cls), next=members(nxt), captured=False)
            if r >= round_cap:
                counter[0] += 1
                return None, [full]
            child = View(KnowledgeState(nxt), r + 1, cls, probe, tuple(vec))
            res, tr = play(child, copy.deepcopy(memory))
            if res is None:
                return None, [full] + tr
            if worst is None or res > worst[0]:
                worst = (res, [full] + tr)
        return worst

    start = View(KnowledgeState(g.all_mask), 1)
    rounds, transcript = play(start, strategy.initial_memory())
    return EvalReport(rounds, rounds is None, round_cap, k, transcript, counter[0])


def replay_transcript(g: Graph, transcript: list[dict]) -> bool:
    """Check a transcript against the game rules; raises AssertionError on mismatch."""
    S = g.all_mask
    for i, e in enumerate(transcript):
        assert mask_of(e["candidates"]) == S, f"round {e['round']}: candidate set differs"
        outcome = partition_by_distance(g, S, e["probe"])
        if e["captured"]:
            assert outcome.captured, f"round {e['round']}: not a capture"
            assert i == len(transcript) - 1
            return True
        cls = outcome.class_of(e["vector"])
        assert cls == mask_of(e["cls"]), f"round {e['round']}: class differs"
        S = g.spread_mask(cls)
        assert S == mask_of(e["next"]), f"round {e['round']}: spread differs"
    return True


# ----------------------------------------------------------------- trees


def _need_tree(g: Graph, who: str):
    if not g.is_tree:
        raise StrategyError(f"{who} needs a tree")


class LeafProbeAll(CopStrategy):
    name = "leaf_probe_all"

    def __init__(self, g: Graph):
        _need_tree(g, self.name)
        self.leaves = tuple(g.leaves) if g.n > 1 else (0,)
        if g.n > 1 and len(self.leaves) < 2:
            raise StrategyError("leaf_probe_all needs at least two leaves")
        super().__init__(len(self.leaves))

    def next_probe(self, g, view, memory):
        return self.leaves

    def bound(self):
        return 1


def leaf_probe_all(g: Graph) -> CopStrategy:
    return LeafProbeAll(g)


def _branch_masks(g: Graph) -> dict[tuple[int, int], int]:
    """For each tree edge (a, w): vertices on w's side once a is removed."""
    out = {}
    d = g.dist
    for a in range(g.n):
        for w in g.adjacency[a]:
            out[(a, w)] = mask_of(v for v in range(g.n) if d[w, v] < d[a, v])
    return out


class TreeTwoCop(CopStrategy):
    """One cop on an anchor, the other on a neighbour whose branch is tested."""

    name = "tree_two_cop"

    def __init__(self, g: Graph):
        _need_tree(g, self.name)
        if g.n < 2:
            raise StrategyError("tree_two_cop needs at least two vertices")
        super().__init__(2)
        self.branch = _branch_masks(g)
        self.n = g.n
        self.start = min(tree_centers(g))

    def initial_memory(self):
        return {"anchor": self.start}

    def next_probe(self, g, view, memory):
        S = view.candidates
        a = memory["anchor"]
        while True:
            live = [w for w in g.adjacency[a] if self.branch[(a, w)] & S]
            if not (S >> a) & 1 and len(live) == 1:
                a = live[0]
                continue
            break
        memory["anchor"] = a
        if not live:
            return (a,)
        return (a, min(live))

    def bound(self):
        return self.n


def tree_two_cop(g: Graph) -> CopStrategy:
    return TreeTwoCop(g)


def _mary_size(m: int, h: int) -> int:
    return sum(m**i for i in range(h + 1))


class _MaryBase(CopStrategy):
    def __init__(self, g: Graph, m: int, h: int, k: int):
        if g.n != _mary_size(m, h) or not g.is_tree:
            raise StrategyError(f"graph is not the perfect {m}-ary tree of height {h}")
        super().__init__(k, {"m": m, "h": h, "k": k})
        self.m, self.h = m, h
        n = g.n
        self.depth = [0] * n
        for v in range(1, n):
            self.depth[v] = self.depth[(v - 1) // m] + 1
        # subtree masks, children first
        self.sub = [0] * n
        for v in range(n - 1, -1, -1):
            mask = 1 << v
            if self.depth[v] < h:
                for c in mary_children(m, v):
                    mask |= self.sub[c]
            self.sub[v] = mask

    def children(self, v: int) -> list[int]:
        return list(mary_children(self.m, v)) if self.depth[v] < self.h else []

    def lca(self, S: int) -> int:
        vs = members(S)
        x = vs[0]
        while self.sub[x] & S != S:
            x = (x - 1) // self.m
        return x


class MaryLow(_MaryBase):
    """Fewer cops than children: test ``k`` child subtrees per round, then descend."""

    name = "mary_low"

    def __init__(self, g, m, h, k):
        if not 2 <= k < m:
            raise StrategyError(f"mary_low needs 2 <= k < m, got k={k}, m={m}")
        super().__init__(g, m, h, k)

    def initial_memory(self):
        return {"anchor": 0}

    def next_probe(self, g, view, memory):
        S = view.candidates
        a = memory["anchor"]
        while True:
            live = [c for c in self.children(a) if self.sub[c] & S]
            if not (S >> a) & 1 and len(live) == 1:
                a = live[0]
                continue
            break
        memory["anchor"] = a
        kids = self.children(a)
        if not kids:
            return (a,)
        probe = live[: self.cops]
        for c in kids:
            if len(probe) >= self.cops:
                break
            if c not in probe:
                probe.append(c)
        return probe

    def bound(self):
        return self.h * ceil((self.m - 1) / self.cops)


def _floor_log(k: int, m: int) -> int:
    i = int(log(k, m))
    while m ** (i + 1) <= k:
        i += 1
    while m**i > k:
        i -= 1
    return i


class MaryHigh(_MaryBase):
    """At least ``m`` cops: probe every descendant ``i`` levels below the lowest common ancestor."""

    name = "mary_high"

    def __init__(self, g, m, h, k):
        if not m <= k < m ** (h + 1):
            raise StrategyError(f"mary_high needs m <= k < m^(h+1), got k={k}")
        super().__init__(g, m, h, k)
        self.i = _floor_log(k, m)

    def _level_below(self, x: int, j: int) -> list[int]:
        layer = [x]
        for _ in range(j):
            layer = [c for v in layer for c in self.children(v)]
        return layer

    def next_probe(self, g, view, memory):
        x = self.lca(view.candidates)
        height = self.h - self.depth[x]
        if height <= self.i:
            return self._level_below(x, height)
        return self._level_below(x, self.i)

    def bound(self):
        return ceil(self.h / self.i)


def mary_low(g: Graph, m: int, h: int, k: int) -> CopStrategy:
    return MaryLow(g, m, h, k)


def mary_high(g: Graph, m: int, h: int, k: int) -> CopStrategy:
    return MaryHigh(g, m, h, k)


# ------------------------------------------------------ decompositions


def _need_td(g: Graph, td: TreeDecomposition):
    msg = td_violation(g, td)
    if msg:
        raise StrategyError(f"invalid decomposition: {msg}")


class PathwidthSweep(CopStrategy):
    """Occupy bag after bag along a path decomposition, skipping one non-candidate when possible."""

    name = "pathwidth_sweep"

    def __init__(self, g: Graph, pd: TreeDecomposition):
        _need_td(g, pd)
        if pd.kind != "path":
            raise StrategyError("pathwidth_sweep needs kind=path")
        pd = reduce_td(pd)
        self.bags = [sorted(pd.bags[i]) for i in path_order(pd)]
        super().__init__(pd.width + 1, {"bags": len(self.bags)})
        self.n = g.n

    def initial_memory(self):
        return {"bag": 0}

    def next_probe(self, g, view, memory):
        i = memory["bag"]
        memory["bag"] = min(i + 1, len(self.bags) - 1)
        bag = self.bags[i]
        S = view.candidates
        skip = next((v for v in bag if not (S >> v) & 1), None)
        if skip is None or len(bag) == 1:
            return bag
        return [v for v in bag if v != skip]

    def bound(self):
        return self.n


def pathwidth_sweep(g: Graph, pd: TreeDecomposition) -> CopStrategy:
    return PathwidthSweep(g, pd)


def _rooted_bags(td: TreeDecomposition, root: int):
    nb = td.neighbors()
    parent = {root: None}
    order = [root]
    for x in order:
        for y in nb[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    children = {x: [y for y in nb[x] if parent.get(y) == x] for x in order}
    return parent, children, order


class TDLeafPaths(CopStrategy):
    """Occupy a whole centre-to-leaf path of bags per round, leaves in greedy overlap order."""

    name = "td_leafpaths"

    def __init__(self, g: Graph, td: TreeDecomposition):
        _need_td(g, td)
        st = td_stats(td)
        parent, _, _ = _rooted_bags(td, st.center)
        nb = td.neighbors()
        if len(td.bags) == 1:
            leaves = [0]
        else:
            leaves = [i for i, x in enumerate(nb) if len(x) == 1 and i != st.center]

        def path_to(leaf):
            p = [leaf]
            while parent[p[-1]] is not None:
                p.append(parent[p[-1]])
            return p[::-1]

        paths = {leaf: path_to(leaf) for leaf in leaves}
        order, last, left = [], set(), set(leaves)
        while left:
            best = min(left, key=lambda l: (-len(last & set(paths[l])), l))
            order.append(best)
            left.discard(best)
            last = set(paths[best])
        self.probes = [sorted(set().union(*(td.bags[b] for b in paths[l]))) for l in order]
        cops = max(len(p) for p in self.probes)
        self.leaf_count = st.leaves
        super().__init__(cops, {"width": st.width, "radius": st.radius, "leaves": st.leaves,
                                "nominal_cops": (st.width + 1) * max(st.radius, 1)})

    def initial_memory(self):
        return {"path": 0}

    def next_probe(self, g, view, memory):
        i = memory["path"]
        memory["path"] = min(i + 1, len(self.probes) - 1)
        return self.probes[i]

    def bound(self):
        return self.leaf_count


class TDCenterOut(CopStrategy):
    """Occupy a bag and its neighbourhood; move one bag towards the closest cop."""

    name = "td_center_out"

    def __init__(self, g: Graph, td: TreeDecomposition):
        _need_td(g, td)
        st = td_stats(td)
        self.root = st.center
        self.radius = st.radius
        parent, self.kids, order = _rooted_bags(td, st.center)
        self.below = {}
        for x in reversed(order):
            acc = set(td.bags[x])
            for y in self.kids[x]:
                acc |= self.below[y]
            self.below[x] = acc
        self.probes = {}
        for i, b in enumerate(td.bags):
            self.probes[i] = sorted(set(b).union(*(g.adjacency[v] for v in b)))
        cops = max(len(p) for p in self.probes.values())
        super().__init__(cops, {"width": st.width, "radius": st.radius,
                                "nominal_cops": (st.width + 1) * (g.max_degree + 1)})
        self.bags = td.bags

    def initial_memory(self):
        return {"bag": self.root}

    def next_probe(self, g, view, memory):
        cur = memory["bag"]
        if view.prev_probe is not None:
            dmin = min(view.prev_vector)
            u1 = min(u for u, d in zip(view.prev_probe, view.prev_vector) if d == dmin)
            if u1 not in self.bags[cur]:
                nxt = [y for y in self.kids[cur] if u1 in self.below[y]]
                if nxt:
                    cur = nxt[0]
        memory["bag"] = cur
        return self.probes[cur]

    def bound(self):
        return self.radius + 1


def td_leafpaths(g: Graph, td: TreeDecomposition) -> CopStrategy:
    return TDLeafPaths(g, td)


def td_center_out(g: Graph, td: TreeDecomposition) -> CopStrategy:
    return TDCenterOut(g, td)


# ----------------------------------------------------- dense families


class KPartite(CopStrategy):
    """Stationary cops on all but one vertex of the smaller parts, one cop sweeping the largest."""

    name = "kpartite_strategy"

    def __init__(self, g: Graph, parts: Sequence[Sequence[int]]):
        parts = [sorted(p) for p in parts]
        if sorted(v for p in parts for v in p) != list(range(g.n)) or any(not p for p in parts):
            raise StrategyError("parts must partition the vertex set")
        where = {v: i for i, p in enumerate(parts) for v in p}
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if (v in g.adjacency[u]) != (where[u] != where[v]):
                    raise StrategyError("graph is not complete multipartite with these parts")
        parts.sort(key=lambda p: (len(p), p[0]))
        self.big = parts[-1]
        if len(self.big) < 2:
            raise StrategyError("the largest part must have more than one vertex")
        singles = [p[0] for p in parts if len(p) == 1]
        self.rho = len(singles)
        fixed = singles[:-1] if singles else []
        for p in parts[:-1]:
            if len(p) > 1:
                fixed += p[:-1]
        self.fixed = fixed
        n, chi = g.n, len(parts)
        cops = (n - chi - len(self.big) + self.rho + 1) if self.rho else (n - chi - len(self.big) + 2)
        super().__init__(cops, {"parts": [list(p) for p in parts], "rho": self.rho})
        if len(fixed) + 1 > cops:
            raise AssertionError("placement exceeds the formula's cop count")

    def initial_memory(self):
        return {"visited": ()}

    def next_probe(self, g, view, memory):
        S = view.candidates
        seen = memory["visited"]
        todo = [v for v in self.big[:-1] if v not in seen]
        pick = next((v for v in todo if (S >> v) & 1), todo[0] if todo else self.big[-2])
        memory["visited"] = seen + (pick,)
        return self.fixed + [pick]

    def bound(self):
        return len(self.big) - 1


def kpartite_strategy(g: Graph, parts: Sequence[Sequence[int]]) -> CopStrategy:
    return KPartite(g, parts)


class ProjectiveTwoPhase(CopStrategy):
    """Two phases on a projective-plane incidence graph.

    Phase 1 pins the robber inside the neighbourhood of a single vertex using
    the lines through a fixed point plus batches of points on a fixed line.
    Phase 2 keeps cops on all but one of the remaining candidates and spends
    the rest on the neighbourhood of a vertex ``v`` in the same side as the
    pinning vertex, which splits the remaining candidates by the vertex of
    ``N(v)`` they meet.
    """

    name = "projective_two_phase"

    def __init__(self, g: Graph, q: int, k: int):
        N = q * q + q + 1
        if g.n != 2 * N:
            raise StrategyError(f"graph does not have the {2 * N} vertices of the order-{q} plane")
        if k <= q:
            raise StrategyError(f"projective_two_phase needs k >= q+1, got k={k}")
        super().__init__(k, {"q": q, "k": k})
        self.q, self.N = q, N
        self.u1 = N
        self.u2 = min(g.adjacency[self.u1])
        self.A = sorted(set(g.adjacency[self.u2]) - {self.u1})
        self.R = sorted(set(g.adjacency[self.u1]) - {self.u2})
        self.k1 = min(k, 2 * q - 1)
        self.batch = self.k1 - q
        self.nbr = [mask_of(a) for a in g.adjacency]

    def initial_memory(self):
        return {"phase": 1, "used": 0, "diverged": False}

    def _pin(self, C: int):
        """The vertex whose neighbourhood holds ``C``, if any (unique once |C| >= 2)."""
        for u in range(2 * self.N):
            if C & self.nbr[u] == C:
                return u
        return None

    def next_probe(self, g, view, memory):
        C = view.prev_class
        if C is not None and popcount(C) >= 2:
            u = self._pin(C)
            if u is not None:
                memory["phase"] = 2
                return self._phase2(g, C, u)
            if memory["phase"] == 2:
                memory["diverged"] = True
        used = memory["used"]
        batch = self.R[used: used + self.batch]
        if not batch:
            batch = self.R[-self.batch:]
        memory["used"] = used + len(batch)
        return self.A + batch

    def _phase2(self, g, C: int, u: int):
        side = range(self.N) if u < self.N else range(self.N, 2 * self.N)
        cand = members(C)
        covered = 0
        for x in cand:
            covered |= self.nbr[x]
        others = [v for v in side if v != u]
        v = next((w for w in others if not (covered >> w) & 1), others[0])
        alpha = len(cand)
        keep = cand if alpha == 2 else cand[:-1]
        shared = set(g.adjacency[u]) & set(g.adjacency[v])
        room = self.cops - len(keep)
        pool = [x for x in g.adjacency[v] if x not in shared and x not in keep]
        pool += [x for x in g.adjacency[v] if x in shared and x not in keep]
        return keep + pool[:max(room, 0)]

    def bound(self):
        q, k = self.q, self.k1
        return ceil((q - 1) / (k - q)) + ceil(q / (k - q + 1))


def projective_two_phase(g: Graph, q: int, k: int) -> CopStrategy:
    return ProjectiveTwoPhase(g, q, k)


class Scripted(CopStrategy):
    name = "scripted_probes"

    def __init__(self, probes: Sequence[Sequence[int]]):
        if not probes:
            raise StrategyError("scripted_probes needs at least one probe")
        self.probes = [tuple(p) for p in probes]
        super().__init__(max(len(set(p)) for p in self.probes), {"probes": [list(p) for p in self.probes]})

    def next_probe(self, g, view, memory):
        if view.round > len(self.probes):
            raise ScriptExhausted
        return self.probes[view.round - 1]

    def bound(self):
        return len(self.probes)


def scripted_probes(probes: Sequence[Sequence[int]]) -> CopStrategy:
    return Scripted(probes)


# ------------------------------------------------------------ by name

STRATEGIES = (
    "leaf_probe_all", "tree_two_cop", "mary_low", "mary_high", "pathwidth_sweep",
    "kpartite_strategy", "projective_two_phase", "td_leafpaths", "td_center_out", "scripted_probes",
)


def parse_strategy_spec(spec: str) -> tuple[str, dict[str, str]]:
    """``name[:key=value,...]`` into a name and a raw parameter dict."""
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in STRATEGIES:
        raise StrategyError(f"unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not key:
                raise StrategyError(f"bad strategy parameter {item!r}; expected key=value")
            params[key.strip()] = value.strip()
    return name, params


def _int(params, key):
    if key not in params:
        raise StrategyError(f"missing strategy parameter {key!r}")
    try:
        return int(params[key])
    except ValueError:
        raise StrategyError(f"parameter {key} must be an integer") from None


def build_strategy(spec: str, g: Graph, td: TreeDecomposition | None = None, parts=None) -> CopStrategy:
    """Instantiate a strategy from a CLI-style spec.

    ``mary_*`` take ``m,h,k``; ``projective_two_phase`` takes ``q,k``;
    ``kpartite_strategy`` takes ``sizes=2.3`` (consecutive blocks);
    ``scripted_probes`` takes ``probes=0.3.5/1.2.4``; the decomposition
    strategies need ``td``.
    """
    name, p = parse_strategy_spec(spec)
    if name == "leaf_probe_all":
        return leaf_probe_all(g)
    if name == "tree_two_cop":
        return tree_two_cop(g)
    if name == "mary_low":
        return mary_low(g, _int(p, "m"), _int(p, "h"), _int(p, "k"))
    if name == "mary_high":
        return mary_high(g, _int(p, "m"), _int(p, "h"), _int(p, "k"))
    if name == "projective_two_phase":
        return projective_two_phase(g, _int(p, "q"), _int(p, "k"))
    if name == "kpartite_strategy":
        if parts is None:
            if "sizes" not in p:
                raise StrategyError("kpartite_strategy needs sizes=a.b.c")
            from .generators import multipartite_parts

            parts = multipartite_parts([int(x) for x in p["sizes"].split(".")])
        return kpartite_strategy(g, parts)
    if name == "scripted_probes":
        if "probes" not in p:
            raise StrategyError("scripted_probes needs probes=a.b/c.d")
        try:
            probes = [[int(x) for x in chunk.split(".")] for chunk in p["probes"].split("/")]
        except ValueError:
            raise StrategyError("probes must look like 0.3.5/1.2.4") from None
        return scripted_probes(probes)
    if td is None:
        raise StrategyError(f"{name} needs a decomposition (--td)")
    if name == "pathwidth_sweep":
        return pathwidth_sweep(g, td)
    if name == "td_leafpaths":
        return td_leafpaths(g, td)
    return td_center_out(g, td)
