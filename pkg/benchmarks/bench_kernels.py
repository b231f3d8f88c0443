"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row is the best of ``--repeat`` runs after one warm-up call, so numba
compilation is excluded.  Outputs are compared between backends as they run.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from locgame import _accel
from locgame.generators import grid, path, perfect_mary_tree, pg2_incidence, random_connected_graph
from locgame.solver import all_probes, solve_capture_time


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def csr(g):
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in g.adjacency])
    return indptr, np.asarray([v for a in g.adjacency for v in a], dtype=np.int64)


def workloads():
    big = random_connected_graph(400, 0.02, 1)
    indptr, indices = csr(big)
    yield "bfs_all_pairs n=400", lambda b: _accel.bfs_all_pairs(indptr, indices, big.n, backend=b)

    h = pg2_incidence(2)
    probes3 = all_probes(range(h.n), 3)
    cand = np.arange(h.n)
    yield "expand_probes Heawood k=3", lambda b: _accel.expand_probes(h.dist, h.nbr_words, cand, probes3, backend=b)[1]

    g = grid(8, 8)
    probes2 = all_probes(range(g.n), 2)
    yield "resolving_rows grid 8x8 k=2", lambda b: _accel.resolving_rows(g.dist, np.arange(g.n), probes2, backend=b)

    rng = np.random.default_rng(0)
    N = 200_000
    inf = np.int32(2**30)
    opt = np.arange(0, 3 * N, 3, dtype=np.int64)
    st = np.arange(N, dtype=np.int64)
    succ = rng.integers(0, N + 1, size=3 * N).astype(np.int64)
    val = np.full(N + 1, inf, dtype=np.int32)
    val[N] = 0
    val[: N // 2] = rng.integers(0, 6, size=N // 2)
    yield "value_sweep 200k states", lambda b: _accel.value_sweep(val, succ, opt, st, inf, backend=b)

    yield "solve Heawood k=3", lambda b: solve_capture_time(h, 3, backend=b).capture_time
    t = perfect_mary_tree(3, 3)
    yield "solve T3^3 k=2 (tree mode)", lambda b: solve_capture_time(t, 2, symmetry="tree", backend=b).capture_time
    p = path(40)
    yield "solve P40 k=1", lambda b: solve_capture_time(p, 1, backend=b).capture_time


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
        return 1
    print(f"{'workload':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speed-up':>9s}")
    for name, fn in workloads():
        a, b = fn("numpy"), fn("numba")
        same = np.array_equal(np.asarray(a), np.asarray(b))
        t_np = best_of(lambda: fn("numpy"), args.repeat)
        t_nb = best_of(lambda: fn("numba"), args.repeat)
        flag = "" if same else "  OUTPUTS DIFFER"
        print(f"{name:34s} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:8.1f}x{flag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
