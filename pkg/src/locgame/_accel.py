"""Hot numeric kernels.

Every kernel has a numba implementation and a pure-numpy one with identical
output.  The numba path is used when numba imports cleanly, unless the
environment variable ``LOCGAME_BACKEND`` is set to ``numpy``.  Both paths are
always importable so tests and benchmarks can compare them directly.

Vertex sets inside kernels are rows of ``uint64`` words (bit ``v`` lives in
word ``v // 64``).
"""
from __future__ import annotations

import math
import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_requested = os.environ.get("LOCGAME_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"LOCGAME_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numba" if HAVE_NUMBA and _requested != "numpy" else "numpy"

UNREACHABLE = -1


def _safe_steps(base: int) -> int:
    # number of base-multiplications that fit in int64 starting from a dense rank
    # below 2**20
    return max(1, int((62 - 20) / max(1.0, math.log2(base))))


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _bfs_all_pairs_np(indptr, indices, n):
    adj = np.zeros((n, n), dtype=np.int32)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    adj[rows, indices] = 1
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    dist[reached] = 0
    d = 0
    while frontier.any():
        d += 1
        nxt = (frontier.astype(np.int32) @ adj) > 0
        nxt &= ~reached
        dist[nxt] = d
        reached |= nxt
        frontier = nxt
    return dist


def _dense_rank_rows(keys):
    order = np.argsort(keys, axis=1, kind="stable")
    sk = np.take_along_axis(keys, order, axis=1)
    start = np.ones_like(sk, dtype=bool)
    start[:, 1:] = sk[:, 1:] != sk[:, :-1]
    ranks = np.cumsum(start, axis=1) - 1
    out = np.empty_like(keys)
    np.put_along_axis(out, order, ranks, axis=1)
    return out


def _probe_keys_np(dist, cand, probes):
    n = dist.shape[0]
    k = probes.shape[1]
    base = int(dist.max()) + 1 if dist.size else 1
    dpad = np.zeros((n + 1, cand.shape[0]), dtype=np.int64)
    dpad[:n] = dist[:, cand]
    pr = np.where(probes < 0, n, probes)
    keys = np.zeros((probes.shape[0], cand.shape[0]), dtype=np.int64)
    steps = _safe_steps(base)
    for j in range(k):
        if j and j % steps == 0:
            keys = _dense_rank_rows(keys)
        keys = keys * base + dpad[pr[:, j]]
    return keys


def _expand_np(dist, nbr_words, cand, probes, chunk=20000):
    P = probes.shape[0]
    s = cand.shape[0]
    W = nbr_words.shape[1]
    succ_parts = []
    counts = np.zeros(P, dtype=np.int64)
    for lo in range(0, P, chunk):
        hi = min(P, lo + chunk)
        keys = _probe_keys_np(dist, cand, probes[lo:hi])
        rows = hi - lo
        order = np.argsort(keys, axis=1, kind="stable")
        sk = np.take_along_axis(keys, order, axis=1)
        start = np.ones((rows, s), dtype=bool)
        start[:, 1:] = sk[:, 1:] != sk[:, :-1]
        flat_start = start.ravel()
        starts = np.flatnonzero(flat_start)
        gid = np.cumsum(flat_start) - 1
        sizes = np.bincount(gid, minlength=starts.shape[0])
        verts = cand[order].ravel()
        words = nbr_words[verts]
        ored = np.bitwise_or.reduceat(words, starts, axis=0)
        multi = sizes >= 2
        succ_parts.append(ored[multi])
        counts[lo:hi] = np.bincount(starts[multi] // s, minlength=rows)
    offsets = np.zeros(P + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    succ = np.concatenate(succ_parts) if succ_parts else np.zeros((0, W), np.uint64)
    return succ.astype(np.uint64, copy=False), offsets


def _resolving_np(dist, cand, probes, chunk=20000):
    out = np.empty(probes.shape[0], dtype=bool)
    for lo in range(0, probes.shape[0], chunk):
        keys = np.sort(_probe_keys_np(dist, cand, probes[lo:lo + chunk]), axis=1)
        out[lo:lo + chunk] = ~(keys[:, 1:] == keys[:, :-1]).any(axis=1)
    return out


def _value_sweep_np(val, succ_flat, opt_start, state_opt_start, inf):
    optval = np.maximum.reduceat(val[succ_flat], opt_start) + 1
    np.minimum(optval, inf, out=optval)
    return np.minimum.reduceat(optval, state_opt_start)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _bfs_all_pairs_nb(indptr, indices, n):
        dist = np.full((n, n), -1, dtype=np.int32)
        queue = np.empty(n, dtype=np.int64)
        for src in range(n):
            dist[src, src] = 0
            queue[0] = src
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[src, u]
                for e in range(indptr[u], indptr[u + 1]):
                    v = indices[e]
                    if dist[src, v] < 0:
                        dist[src, v] = du + 1
                        queue[tail] = v
                        tail += 1
        return dist

    @njit(cache=True)
    def _keys_nb(dist, cand, probes, p, keys, base, steps):
        s = cand.shape[0]
        for i in range(s):
            keys[i] = 0
        for j in range(probes.shape[1]):
            u = probes[p, j]
            if u < 0:
                break
            if j > 0 and j % steps == 0:
                order = np.argsort(keys)
                rank = 0
                prev = keys[order[0]]
                for t in range(s):
                    cur = keys[order[t]]
                    if cur != prev:
                        rank += 1
                        prev = cur
                    keys[order[t]] = rank
            for i in range(s):
                keys[i] = keys[i] * base + dist[u, cand[i]]

    @njit(cache=True)
    def _expand_nb(dist, nbr_words, cand, probes, base, steps):
        P = probes.shape[0]
        s = cand.shape[0]
        W = nbr_words.shape[1]
        cap = max(64, P)
        out = np.empty((cap, W), dtype=np.uint64)
        offsets = np.empty(P + 1, dtype=np.int64)
        keys = np.empty(s, dtype=np.int64)
        total = 0
        for p in range(P):
            offsets[p] = total
            _keys_nb(dist, cand, probes, p, keys, base, steps)
            order = np.argsort(keys)
            i = 0
            while i < s:
                j = i + 1
                ki = keys[order[i]]
                while j < s and keys[order[j]] == ki:
                    j += 1
                if j - i >= 2:
                    if total == cap:
                        cap *= 2
                        grown = np.empty((cap, W), dtype=np.uint64)
                        grown[:total] = out[:total]
                        out = grown
                    for w in range(W):
                        out[total, w] = 0
                    for t in range(i, j):
                        v = cand[order[t]]
                        for w in range(W):
                            out[total, w] |= nbr_words[v, w]
                    total += 1
                i = j
        offsets[P] = total
        return out[:total].copy(), offsets

    @njit(cache=True)
    def _resolving_nb(dist, cand, probes, base, steps):
        P = probes.shape[0]
        s = cand.shape[0]
        out = np.empty(P, dtype=np.bool_)
        keys = np.empty(s, dtype=np.int64)
        for p in range(P):
            _keys_nb(dist, cand, probes, p, keys, base, steps)
            sk = np.sort(keys)
            ok = True
            for i in range(1, s):
                if sk[i] == sk[i - 1]:
                    ok = False
                    break
            out[p] = ok
        return out

    @njit(cache=True)
    def _value_sweep_nb(val, succ_flat, opt_start, state_opt_start, inf):
        n_opt = opt_start.shape[0]
        n_state = state_opt_start.shape[0]
        optval = np.empty(n_opt, dtype=val.dtype)
        for o in range(n_opt):
            end = opt_start[o + 1] if o + 1 < n_opt else succ_flat.shape[0]
            best = val[succ_flat[opt_start[o]]]
            for e in range(opt_start[o] + 1, end):
                x = val[succ_flat[e]]
                if x > best:
                    best = x
            optval[o] = min(best + 1, inf)
        out = np.empty(n_state, dtype=val.dtype)
        for st in range(n_state):
            end = state_opt_start[st + 1] if st + 1 < n_state else n_opt
            best = optval[state_opt_start[st]]
            for o in range(state_opt_start[st] + 1, end):
                if optval[o] < best:
                    best = optval[o]
            out[st] = best
        return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _norm_probes(probes):
    probes = np.asarray(probes, dtype=np.int32)
    if probes.ndim == 1:
        probes = probes[None, :]
    return np.ascontiguousarray(probes)


def bfs_all_pairs(indptr, indices, n, backend=None):
    """All-pairs hop distances of a CSR graph; ``-1`` marks unreachable pairs."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if (backend or BACKEND) == "numba":
        return _bfs_all_pairs_nb(indptr, indices, n)
    return _bfs_all_pairs_np(indptr, indices, n)


def expand_probes(dist, nbr_words, cand, probes, backend=None):
    """Successor sets of one candidate set under a batch of probes.

    ``probes`` is an int array of shape (P, k), rows padded with -1.  For probe
    ``p`` the rows ``succ[offsets[p]:offsets[p+1]]`` are the spreads (closed
    neighbourhood unions) of every distance class of ``cand`` with two or more
    members, in increasing order of distance vector.  An empty slice means the
    probe separates every candidate.
    """
    cand = np.ascontiguousarray(cand, dtype=np.int64)
    probes = _norm_probes(probes)
    if (backend or BACKEND) == "numba":
        base = int(dist.max()) + 1
        return _expand_nb(dist, nbr_words, cand, probes, base, _safe_steps(base))
    return _expand_np(dist, nbr_words, cand, probes)


def resolving_rows(dist, cand, probes, backend=None):
    """Boolean per probe: are the distance vectors of ``cand`` pairwise distinct."""
    cand = np.ascontiguousarray(cand, dtype=np.int64)
    probes = _norm_probes(probes)
    if cand.shape[0] <= 1:
        return np.ones(probes.shape[0], dtype=bool)
    if (backend or BACKEND) == "numba":
        base = int(dist.max()) + 1
        return _resolving_nb(dist, cand, probes, base, _safe_steps(base))
    return _resolving_np(dist, cand, probes)


def value_sweep(val, succ_flat, opt_start, state_opt_start, inf, backend=None):
    """One synchronous Bellman sweep: min over options of 1 + max successor value."""
    if (backend or BACKEND) == "numba":
        return _value_sweep_nb(val, succ_flat, opt_start, state_opt_start, inf)
    return _value_sweep_np(val, succ_flat, opt_start, state_opt_start, inf)
