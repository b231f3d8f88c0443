"""Exact capture times, localization numbers and metric dimension.

``solve_capture_time`` explores every candidate set reachable from the full
vertex set, records for each probe the successor candidate sets, and then runs
synchronous Bellman sweeps from "unknown everywhere".  After sweep ``t`` a
state has value ``<= t`` exactly when ``t`` probing rounds suffice from it, so
the sweeps stop at the least fixed point; states still unknown there are robber
wins.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import _accel
from .bits import mask_to_array, members, popcount, words_to_masks
from .graph import Graph
from .treesym import RootedTree

log = logging.getLogger(__name__)

FINITE = "finite"
ROBBER_WINS = "robber_wins"
ABORTED = "aborted"

_INF = np.int32(2**30)


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class Budget:
    max_states: int = 2**22
    max_probes: int = 10**9

    def __post_init__(self):
        if self.max_states < 1 or self.max_probes < 1:
            raise ValueError("budgets must be positive")


@dataclass
class SolveResult:
    outcome: str
    k: int
    capture_time: int | None = None
    states: int = 0
    probes: int = 0
    witness: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)
    reason: str = ""
    seconds: float = 0.0

    @property
    def finite(self) -> bool:
        return self.outcome == FINITE

    def as_dict(self, graph_name: str = "") -> dict:
        return {
            "graph": graph_name,
            "k": self.k,
            "outcome": self.outcome,
            "capture_time": self.capture_time,
            "states": self.states,
            "probes": self.probes,
        }


def all_probes(vertices, k: int) -> np.ndarray:
    """Every nonempty subset of ``vertices`` with at most ``k`` members, in
    lexicographic order of sorted tuples, padded with -1 to width ``k``."""
    vertices = sorted(vertices)
    k = min(k, len(vertices))
    rows = []
    for size in range(1, k + 1):
        rows.extend(combinations(vertices, size))
    rows.sort()
    out = np.full((len(rows), max(k, 1)), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out


def _row_tuple(row) -> tuple[int, ...]:
    return tuple(int(x) for x in row if x >= 0)


class _GameGraph:
    """Explored states with their deduplicated probe options."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.keys: dict = {}
        self.masks: list[int] = []
        self.options: list[list[tuple[tuple[int, ...], tuple[int, ...]]]] = []
        self.probes = 0

    def add(self, key, mask: int) -> int:
        sid = self.keys.get(key)
        if sid is None:
            sid = len(self.masks)
            if sid >= self.budget.max_states:
                raise BudgetExceeded(f"state budget {self.budget.max_states} exhausted")
            self.keys[key] = sid
            self.masks.append(mask)
        return sid

    def charge(self, count: int):
        self.probes += count
        if self.probes > self.budget.max_probes:
            raise BudgetExceeded(f"probe budget {self.budget.max_probes} exhausted")

    def record(self, probe_tuples, offsets, succ_keys_masks) -> None:
        """Register successors and keep the first probe for each distinct successor set."""
        ids = [self.add(key, m) for key, m in succ_keys_masks]
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for p in range(len(probe_tuples)):
            key = tuple(sorted(set(ids[offsets[p]:offsets[p + 1]])))
            if key not in seen:
                seen[key] = probe_tuples[p]
        self.options.append([(probe, key) for key, probe in seen.items()])

    def solve_values(self, backend=None) -> tuple[np.ndarray, int]:
        N = len(self.masks)
        sentinel = N
        succ_flat, opt_start, state_start = [], [], []
        for opts in self.options:
            state_start.append(len(opt_start))
            for _, succ in opts:
                opt_start.append(len(succ_flat))
                succ_flat.extend(succ if succ else (sentinel,))
        succ_flat = np.asarray(succ_flat, dtype=np.int64)
        opt_start = np.asarray(opt_start, dtype=np.int64)
        state_start = np.asarray(state_start, dtype=np.int64)
        val = np.full(N + 1, _INF, dtype=np.int32)
        val[sentinel] = 0
        sweeps = 0
        while True:
            new = _accel.value_sweep(val, succ_flat, opt_start, state_start, _INF, backend=backend)
            sweeps += 1
            if np.array_equal(new, val[:N]):
                break
            val[:N] = new
        return val[:N], sweeps

    def best_probe(self, sid: int, val: np.ndarray) -> tuple[int, ...] | None:
        target = val[sid]
        if target >= _INF:
            return None
        for probe, succ in self.options[sid]:
            worst = max((int(val[s]) for s in succ), default=0)
            if worst + 1 == target:
                return probe
        raise AssertionError("no option achieves the state value")


def _capturing_index(offsets: np.ndarray) -> int | None:
    hits = np.flatnonzero(np.diff(offsets) == 0)
    return int(hits[0]) if hits.size else None


def solve_capture_time(
    g: Graph,
    k: int,
    budget: Budget | None = None,
    *,
    probe_vertices=None,
    symmetry: str = "none",
    backend: str | None = None,
) -> SolveResult:
    """Exact capture time of ``g`` with ``k`` cops against an omniscient robber.

    ``probe_vertices`` restricts where cops may probe (plain search only).
    ``symmetry="tree"`` switches to the exact tree reduction of
    :mod:`locgame.treesym`; its witness covers canonical representatives only.
    """
    if k < 1:
        raise ValueError("need at least one cop")
    budget = budget or Budget()
    t0 = time.perf_counter()
    gg = _GameGraph(budget)
    try:
        if symmetry == "tree":
            if probe_vertices is not None:
                raise ValueError("probe_vertices is not supported with tree symmetry")
            _explore_tree(g, k, gg, backend)
        elif symmetry == "none":
            _explore_plain(g, k, gg, probe_vertices, backend)
        else:
            raise ValueError(f"unknown symmetry mode {symmetry!r}")
    except BudgetExceeded as exc:
        return SolveResult(ABORTED, k, None, len(gg.masks), gg.probes, reason=str(exc),
                           seconds=time.perf_counter() - t0)
    val, sweeps = gg.solve_values(backend)
    log.debug("solved %s k=%d: %d states, %d probes, %d sweeps", g.name, k, len(gg.masks), gg.probes, sweeps)
    root_val = int(val[0])
    witness = {}
    if root_val < _INF:
        stack = [0]
        while stack:
            sid = stack.pop()
            mask = gg.masks[sid]
            if mask in witness:
                continue
            probe = gg.best_probe(sid, val)
            witness[mask] = probe
            for p, succ in gg.options[sid]:
                if p == probe:
                    stack.extend(succ)
                    break
        outcome, t = FINITE, root_val
    else:
        outcome, t = ROBBER_WINS, None
    return SolveResult(outcome, k, t, len(gg.masks), gg.probes, witness,
                       seconds=time.perf_counter() - t0)


def _explore_plain(g: Graph, k: int, gg: _GameGraph, probe_vertices, backend) -> None:
    allowed = range(g.n) if probe_vertices is None else sorted(set(probe_vertices))
    probe_arr = all_probes(allowed, k)
    probe_tuples = [_row_tuple(r) for r in probe_arr]
    dist, words = g.dist, g.nbr_words
    gg.add(g.all_mask, g.all_mask)
    i = 0
    while i < len(gg.masks):
        S = gg.masks[i]
        cand = mask_to_array(S)
        gg.charge(len(probe_tuples))
        succ, offsets = _accel.expand_probes(dist, words, cand, probe_arr, backend=backend)
        hit = _capturing_index(offsets)
        if hit is not None:
            gg.options.append([(probe_tuples[hit], ())])
        else:
            masks = words_to_masks(succ)
            gg.record(probe_tuples, offsets.tolist(), [(m, m) for m in masks])
        i += 1


def _explore_tree(g: Graph, k: int, gg: _GameGraph, backend) -> None:
    rt = RootedTree(g)
    intern: dict = {}
    canon_cache: dict[int, int] = {}

    def canon(mask: int) -> int:
        c = canon_cache.get(mask)
        if c is None:
            c = rt.canonical(mask, intern)
            canon_cache[mask] = c
        return c

    dist, words = g.dist, g.nbr_words
    gg.add(canon(g.all_mask), g.all_mask)
    i = 0
    while i < len(gg.masks):
        S = gg.masks[i]
        span = rt.spanning_subtree(S)
        if k >= 2:
            allowed = rt.leaves_of(span)
            if popcount(allowed) <= k:
                gg.charge(1)
                gg.options.append([(tuple(members(allowed)), ())])
                i += 1
                continue
            size = k
        else:
            allowed, size = span, 1
        reps = rt.subset_orbits(S, allowed, size, intern)
        gg.charge(len(reps))
        arr = np.full((len(reps), size), -1, dtype=np.int32)
        for r, t in enumerate(reps):
            arr[r, : len(t)] = t
        order = sorted(range(len(reps)), key=lambda r: reps[r])
        reps = [reps[r] for r in order]
        arr = arr[order]
        succ, offsets = _accel.expand_probes(dist, words, mask_to_array(S), arr, backend=backend)
        hit = _capturing_index(offsets)
        if hit is not None:
            gg.options.append([(reps[hit], ())])
        else:
            masks = words_to_masks(succ)
            gg.record(reps, offsets.tolist(), [(canon(m), m) for m in masks])
        i += 1



def is_resolving(g: Graph, probe) -> bool:
    """True iff the distance vectors to ``probe`` are pairwise distinct over V(G)."""
    probe = sorted(set(int(v) for v in probe))
    if not probe:
        return g.n == 1
    return bool(_accel.resolving_rows(g.dist, np.arange(g.n), np.asarray([probe]))[0])


def metric_dimension(g: Graph, budget: Budget | None = None, batch: int = 50000) -> tuple[int, tuple[int, ...]]:
    """Smallest resolving set by increasing-size search; lexicographically least witness."""
    budget = budget or Budget()
    if g.n == 1:
        return 0, ()
    cand = np.arange(g.n)
    spent = 0
    for size in range(1, g.n + 1):
        combos = combinations(range(g.n), size)
        while True:
            chunk = [c for _, c in zip(range(batch), combos)]
            if not chunk:
                break
            spent += len(chunk)
            if spent > budget.max_probes:
                raise BudgetExceeded(f"probe budget {budget.max_probes} exhausted at size {size}")
            ok = _accel.resolving_rows(g.dist, cand, np.asarray(chunk, dtype=np.int32))
            hits = np.flatnonzero(ok)
            if hits.size:
                return size, tuple(chunk[int(hits[0])])
    raise AssertionError("the full vertex set always resolves")


@dataclass
class LocalizationResult:
    zeta: int | None
    table: dict[int, SolveResult]
    aborted: bool = False


def localization_number(g: Graph, budget: Budget | None = None, *, symmetry: str = "none",
                        max_k: int | None = None) -> LocalizationResult:
    """Least ``k`` with a finite capture time, with every per-``k`` result."""
    table = {}
    for k in range(1, (max_k or g.n) + 1):
        res = solve_capture_time(g, k, budget, symmetry=symmetry)
        table[k] = res
        if res.outcome == ABORTED:
            return LocalizationResult(None, table, aborted=True)
        if res.finite:
            return LocalizationResult(k, table)
    return LocalizationResult(None, table)


def probe_count(n: int, k: int) -> int:
    return sum(comb(n, s) for s in range(1, min(k, n) + 1))
