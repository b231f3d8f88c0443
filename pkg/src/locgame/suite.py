"""Verification suite: each acceptance check as a list of result rows.

Rows carry a stable id, the criterion number they belong to, what was
expected and observed, and a pass flag.  ``run_suite`` is shared by the
``verify`` subcommand and the acceptance tests.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import ceil
from typing import Callable

import networkx as nx

from .decomposition import (TreeDecomposition, interval_clique_path, minfill_td, td_stats,
                            tree_edge_td)
from .designs import fano_heawood
from .generators import (complete_multipartite, cycle, fig2_h, grid, multipartite_parts, path,
                         perfect_mary_tree, pg2_incidence, random_connected_graph, random_tree, star)
from .graph import build_graph
from .solver import is_resolving, localization_number, metric_dimension, solve_capture_time
from .strategies import (evaluate_strategy, kpartite_strategy, leaf_probe_all, mary_high, mary_low,
                         pathwidth_sweep, projective_two_phase, replay_transcript, scripted_probes,
                         td_center_out, td_leafpaths, tree_two_cop)


@dataclass
class Row:
    id: str
    criterion: int
    expected: str
    observed: str
    passed: bool
    seconds: float = 0.0
    reason: str = ""

    def as_dict(self) -> dict:
        return {"id": self.id, "criterion": self.criterion, "expected": self.expected,
                "observed": self.observed, "pass": self.passed, "reason": self.reason}


def _timed(fn: Callable[[], tuple[str, str, bool, str]], rid: str, crit: int) -> Row:
    t0 = time.perf_counter()
    try:
        expected, observed, ok, reason = fn()
    except Exception as exc:  # a crash is a failure with its reason
        expected, observed, ok, reason = "-", "error", False, f"{type(exc).__name__}: {exc}"
    return Row(rid, crit, expected, observed, ok, time.perf_counter() - t0, reason)


def _capt(g, k, **kw):
    res = solve_capture_time(g, k, **kw)
    if res.outcome == "aborted":
        raise RuntimeError(f"solver aborted on {g.name} k={k}: {res.reason}")
    return res


# --------------------------------------------------------------- 1 to 4


def check_stars():
    got = [_capt(star(n), 1).capture_time for n in range(2, 7)]
    want = [n - 1 for n in range(2, 7)]
    return str(want), str(got), got == want, ""


def check_fig2():
    g = fig2_h()
    t = _capt(g, 1).capture_time
    z = localization_number(g).zeta
    return "capt=3 zeta=1", f"capt={t} zeta={z}", (t, z) == (3, 1), ""


def check_grid():
    g = grid(8, 8)
    probe = [0, 7]
    ok = is_resolving(g, probe)
    rep = evaluate_strategy(g, scripted_probes([probe]), 1)
    rounds = rep.worst_case_rounds
    return "resolving=True rounds=1", f"resolving={ok} rounds={rounds}", ok and rounds == 1, ""


def check_heawood_solve():
    g = pg2_incidence(2)
    loc = localization_number(g)
    res = _capt(g, 3)
    ok = not loc.aborted and loc.zeta == 3 and res.capture_time == 2
    return "zeta=3 capt=2", f"zeta={loc.zeta} capt={res.capture_time}", ok, ""


def check_heawood_one_round():
    g = pg2_incidence(2)
    hits = sum(1 for p in combinations(range(g.n), 3) if is_resolving(g, p))
    beta, _ = metric_dimension(g)
    g2, lab = fano_heawood()
    rep = evaluate_strategy(g2, scripted_probes([[lab[1], lab[4], lab[6]], [lab[2], lab[3], lab[5]]]), 5)
    ok = hits == 0 and beta > 3 and rep.worst_case_rounds == 2
    return ("no resolving 3-set, scripted plan 2 rounds",
            f"resolving 3-sets={hits} beta={beta} scripted={rep.worst_case_rounds}", ok, "")


# ---------------------------------------------------------------- 5


def floor_log(k: int, m: int) -> int:
    i = 0
    while m ** (i + 1) <= k:
        i += 1
    return i


def mary_bracket(m: int, h: int, k: int) -> tuple[float, int]:
    if k < m:
        return h * ((m - 1) // k), h * ceil((m - 1) / k)
    i = floor_log(k, m)
    return h / (1 + i), ceil(h / i)


def mary_cases():
    for m in (2, 3, 4):
        for h in (1, 2, 3):
            for k in range(2, min(m + 2, 6) + 1):
                yield m, h, k


def check_mary():
    bad = []
    count = 0
    for m, h, k in mary_cases():
        v = _capt(perfect_mary_tree(m, h), k, symmetry="tree").capture_time
        lo, hi = mary_bracket(m, h, k)
        count += 1
        if v is None or not lo <= v <= hi:
            bad.append(f"(m={m},h={h},k={k}) value {v} outside [{lo:g},{hi}]")
    return f"{count} cases in bracket", f"{count - len(bad)} in bracket", not bad, "; ".join(bad)


# ---------------------------------------------------------------- 6


def _eval_cases(cases, cap=60):
    """cases: (label, graph, strategy, bound) -> (count, failures)."""
    bad = []
    for label, g, s, bound in cases:
        rep = evaluate_strategy(g, s, cap)
        replay_transcript(g, rep.transcript)
        if rep.exceeded or rep.worst_case_rounds > bound:
            bad.append(f"{label}: {rep.worst_case_rounds if not rep.exceeded else 'exceeded'} > {bound}")
    return len(cases), bad


def _row_from(cases):
    n, bad = _eval_cases(cases)
    return f"{n} within bound", f"{n - len(bad)} within bound", not bad, "; ".join(bad)


def soundness_leaf():
    cases = [(f"star{n}", star(n), leaf_probe_all(star(n)), 1) for n in range(2, 7)]
    cases += [("P4", path(4), leaf_probe_all(path(4)), 1), ("H", fig2_h(), leaf_probe_all(fig2_h()), 1)]
    cases += [(f"tree{s}", t, leaf_probe_all(t), 1) for s in range(5) for t in [random_tree(9, s)]]
    return _row_from(cases)


def soundness_tree_two():
    graphs = [path(6), star(4), perfect_mary_tree(2, 3), fig2_h()]
    graphs += [random_tree(n, s) for n, s in [(7, 1), (9, 2), (10, 3), (10, 4)]]
    return _row_from([(g.name, g, tree_two_cop(g), g.n) for g in graphs])


def soundness_mary_low():
    cases = []
    for m, h, k in [(3, 2, 2), (7, 3, 3), (3, 1, 2), (4, 2, 2), (4, 3, 2), (4, 3, 3), (5, 2, 2), (5, 2, 3)]:
        g = perfect_mary_tree(m, h)
        cases.append((f"T{m}^{h} k={k}", g, mary_low(g, m, h, k), h * ceil((m - 1) / k)))
    return _row_from(cases)


def soundness_mary_high():
    cases = []
    for m, h, k in [(2, 4, 4), (2, 2, 4), (2, 3, 2), (2, 3, 3), (3, 3, 3), (3, 2, 5), (3, 3, 9), (4, 2, 4)]:
        g = perfect_mary_tree(m, h)
        cases.append((f"T{m}^{h} k={k}", g, mary_high(g, m, h, k), ceil(h / floor_log(k, m))))
    return _row_from(cases)


INTERVAL_EXAMPLES = [
    [(0, 2), (1, 3), (2, 5), (4, 6), (5, 8), (7, 9), (1, 4)],
    [(0, 1), (1, 2), (2, 3), (3, 4)],
    [(0, 10), (1, 2), (3, 4), (5, 6), (7, 8)],
    [(0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8)],
]


def soundness_pathwidth():
    cases = []
    for i, ivs in enumerate(INTERVAL_EXAMPLES):
        g, pd = interval_clique_path(ivs)
        cases.append((f"interval{i}", g, pathwidth_sweep(g, pd), g.n))
    p5 = path(5)
    cases.append(("P5", p5, pathwidth_sweep(p5, TreeDecomposition.path([[i, i + 1] for i in range(4)])), 5))
    return _row_from(cases)


def multipartite_sizes():
    for parts in (2, 3):
        for sizes in combinations_with_replacement((1, 2, 3), parts):
            if max(sizes) > 1:
                yield sizes


def soundness_kpartite():
    cases = []
    for sizes in multipartite_sizes():
        g = complete_multipartite(sizes)
        cases.append((g.name, g, kpartite_strategy(g, multipartite_parts(sizes)), max(sizes) - 1))
    return _row_from(cases)


def projective_bound(q: int, k: int) -> int:
    return ceil((q - 1) / (k - q)) + ceil(q / (k - q + 1))


def soundness_projective(q: int, k: int):
    g = pg2_incidence(q)
    return _row_from([(f"PG2({q}) k={k}", g, projective_two_phase(g, q, k), projective_bound(q, k))])


def _td_examples():
    out = [("P4", path(4), TreeDecomposition.path([[0, 1], [1, 2], [2, 3]])),
           ("K1,3", star(3), TreeDecomposition.make([[0, 1], [0, 2], [0, 3], [0]], [(3, 0), (3, 1), (3, 2)])),
           ("P6", path(6), TreeDecomposition.path([[i, i + 1] for i in range(5)]))]
    t22 = perfect_mary_tree(2, 2)
    out.append(("T2^2", t22, tree_edge_td(t22)))
    for g in (cycle(4), cycle(6), grid(3, 3), fig2_h(), random_connected_graph(8, 0.35, 3)):
        out.append((g.name or "random", g, minfill_td(g)))
    return out


def soundness_td_leafpaths():
    return _row_from([(name, g, td_leafpaths(g, td), td_stats(td).leaves) for name, g, td in _td_examples()])


def soundness_td_center():
    return _row_from([(name, g, td_center_out(g, td), td_stats(td).radius + 1) for name, g, td in _td_examples()])


# ---------------------------------------------------------------- 7


def random_subtree(t, rng: random.Random, size: int) -> list[int]:
    start = rng.randrange(t.n)
    chosen, frontier = {start}, set(t.adjacency[start])
    while len(chosen) < size and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier |= set(t.adjacency[v])
        frontier -= chosen
    return sorted(chosen)


def check_monotone(trees: int = 50, subs: int = 5):
    rng = random.Random(2024)
    bad, count = [], 0
    for i in range(trees):
        n = rng.randint(4, 10)
        t = random_tree(n, 1000 + i)
        full = {k: _capt(t, k).capture_time for k in (2, 3)}
        for _ in range(subs):
            keep = random_subtree(t, rng, rng.randint(2, n))
            h, _ = t.induced(keep)
            for k in (2, 3):
                sub = _capt(h, k).capture_time
                count += 1
                if sub > full[k]:
                    bad.append(f"tree {i} sub {keep} k={k}: {sub} > {full[k]}")
    return f"{count} subtree checks hold", f"{count - len(bad)} hold", not bad, "; ".join(bad[:5])


def check_nonmonotone_witness():
    h = _capt(fig2_h(), 1).capture_time
    g = grid(8, 8)
    one = evaluate_strategy(g, scripted_probes([[0, 7]]), 1).worst_case_rounds
    return "H capt=3, grid 1 round", f"H capt={h}, grid {one} round", h == 3 and one == 1, ""


# ---------------------------------------------------------------- 8


def check_relational(count: int = 100):
    rng = random.Random(77)
    bad = []
    for i in range(count):
        n = rng.randint(3, 9)
        p = rng.choice((0.25, 0.35, 0.5, 0.7))
        g = random_connected_graph(n, p, 500 + i)
        beta, _ = metric_dimension(g)
        loc = localization_number(g, max_k=beta)
        zeta = loc.zeta
        times = [_capt(g, k).capture_time for k in range(zeta, beta + 1)] if zeta else []
        problems = []
        if zeta is None or zeta > beta:
            problems.append(f"zeta={zeta} beta={beta}")
        if not times or times[-1] != 1:
            problems.append(f"capt at beta {times[-1] if times else None}")
        if any(a < b for a, b in zip(times, times[1:])):
            problems.append(f"increasing {times}")
        if problems:
            bad.append(f"graph {i} (n={n}): " + ", ".join(problems))
    return f"{count} graphs consistent", f"{count - len(bad)} consistent", not bad, "; ".join(bad[:5])


# ---------------------------------------------------------------- 9


def kpartite_formula(sizes) -> int:
    n, chi = sum(sizes), len(sizes)
    big = max(sizes)
    rho = sum(1 for s in sizes if s == 1)
    return n - chi - big + rho + 1 if rho else n - chi - big + 2


def check_kpartite():
    bad, count = [], 0
    for sizes in multipartite_sizes():
        g = complete_multipartite(sizes)
        loc = localization_number(g)
        want = kpartite_formula(sizes)
        capt = loc.table[loc.zeta].capture_time if loc.zeta else None
        count += 1
        if loc.zeta != want or capt is None or capt > max(sizes) - 1:
            bad.append(f"{g.name}: zeta={loc.zeta} formula={want} capt={capt}")
    return f"{count} graphs match", f"{count - len(bad)} match", not bad, "; ".join(bad)


# ---------------------------------------------------------------- 10


def check_leaf_normalization(max_n: int = 8):
    bad, count = [], 0
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            g = build_graph(sorted(tuple(sorted(e)) for e in t.edges()), n)
            plain = _capt(g, 2).capture_time
            leaf = _capt(g, 2, probe_vertices=g.leaves).capture_time
            count += 1
            if plain != leaf:
                bad.append(f"n={n} {sorted(t.edges())}: {leaf} != {plain}")
    return f"{count} trees agree", f"{count - len(bad)} agree", not bad, "; ".join(bad[:5])


# ------------------------------------------------------------ registry

CHECKS: list[tuple[str, int, Callable]] = [
    ("star-capture", 1, check_stars),
    ("fig2-h", 2, check_fig2),
    ("grid-resolving", 3, check_grid),
    ("heawood-solve", 4, check_heawood_solve),
    ("heawood-one-round", 4, check_heawood_one_round),
    ("mary-bracket", 5, check_mary),
    ("strategy-leaf-probe-all", 6, soundness_leaf),
    ("strategy-tree-two-cop", 6, soundness_tree_two),
    ("strategy-mary-low", 6, soundness_mary_low),
    ("strategy-mary-high", 6, soundness_mary_high),
    ("strategy-pathwidth-sweep", 6, soundness_pathwidth),
    ("strategy-kpartite", 6, soundness_kpartite),
    ("projective-q2-k3", 6, lambda: soundness_projective(2, 3)),
    ("projective-q2-k4", 6, lambda: soundness_projective(2, 4)),
    ("projective-q3-k4", 6, lambda: soundness_projective(3, 4)),
    ("projective-q3-k5", 6, lambda: soundness_projective(3, 5)),
    ("projective-q3-k6", 6, lambda: soundness_projective(3, 6)),
    ("strategy-td-leafpaths", 6, soundness_td_leafpaths),
    ("strategy-td-center-out", 6, soundness_td_center),
    ("tree-monotonicity", 7, check_monotone),
    ("nonmonotone-witness", 7, check_nonmonotone_witness),
    ("relational-invariants", 8, check_relational),
    ("kpartite-formula", 9, check_kpartite),
    ("leaf-normalization", 10, check_leaf_normalization),
]

SUITES = ("paper",)


def select(only: str | None = None) -> list[tuple[str, int, Callable]]:
    """Checks whose id contains ``only`` (or whose criterion number equals it)."""
    if not only:
        return list(CHECKS)
    return [c for c in CHECKS if only in c[0] or only == str(c[1])]


def run_suite(only: str | None = None, log: Callable[[Row], None] | None = None) -> list[Row]:
    rows = []
    for rid, crit, fn in select(only):
        row = _timed(fn, rid, crit)
        rows.append(row)
        if log:
            log(row)
    return rows
