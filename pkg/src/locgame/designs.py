"""Desarguesian projective planes PG(2, q) over prime fields and their incidence graphs."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product

from .graph import Graph, build_graph


class PlaneError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectivePlane:
    q: int
    points: tuple[int, ...]
    lines: tuple[frozenset[int], ...]

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "lines": [sorted(L) for L in self.lines]})

    @classmethod
    def from_lines(cls, q: int, lines) -> "ProjectivePlane":
        pts = sorted({p for L in lines for p in L})
        return cls(q, tuple(pts), tuple(frozenset(L) for L in lines))


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def _normalized_triples(q: int) -> list[tuple[int, int, int]]:
    out = []
    for t in product(range(q), repeat=3):
        if any(t):
            lead = next(x for x in t if x)
            if lead == 1:
                out.append(t)
    return sorted(out, key=lambda t: (t[0] == 0, t[1] == 0, t))


def build_pg2(q: int) -> ProjectivePlane:
    """PG(2, q) with points and lines as normalised nonzero triples mod ``q``.

    A point lies on a line when the dot product of their triples is 0 mod q.
    Only prime ``q`` is supported.
    """
    if q < 2 or not _is_prime(q):
        raise PlaneError(f"plane order must be a prime >= 2, got {q}")
    triples = _normalized_triples(q)
    lines = []
    for L in triples:
        lines.append(frozenset(i for i, P in enumerate(triples) if sum(a * b for a, b in zip(P, L)) % q == 0))
    return ProjectivePlane(q, tuple(range(len(triples))), tuple(lines))


def plane_violation(plane: ProjectivePlane) -> str | None:
    """First violated condition as a short message, or ``None`` for a valid plane."""
    q = plane.q
    N = q * q + q + 1
    pts = set(plane.points)
    if len(pts) != N or len(plane.lines) != N:
        return f"need {N} points and lines, got {len(pts)} and {len(plane.lines)}"
    if len(set(plane.lines)) != N:
        return "repeated line"
    for L in plane.lines:
        if not L <= pts:
            return "line contains an unknown point"
        if len(L) != q + 1:
            return f"line of size {len(L)}, expected {q + 1}"
    for a, b in combinations(sorted(pts), 2):
        c = sum(1 for L in plane.lines if a in L and b in L)
        if c != 1:
            return f"axiom 1: points {a},{b} lie on {c} common lines"
    for L, M in combinations(plane.lines, 2):
        if len(L & M) != 1:
            return f"axiom 2: lines {sorted(L)},{sorted(M)} meet in {len(L & M)} points"
    for p in pts:
        r = sum(1 for L in plane.lines if p in L)
        if r != q + 1:
            return f"point {p} on {r} lines, expected {q + 1}"
    if not _has_quadrilateral(plane):
        return "axiom 3: no four points with at most two on any line"
    return None


def _has_quadrilateral(plane: ProjectivePlane) -> bool:
    for quad in combinations(sorted(plane.points), 4):
        s = set(quad)
        if all(len(s & L) <= 2 for L in plane.lines):
            return True
    return False


def validate_plane(plane: ProjectivePlane) -> bool:
    return plane_violation(plane) is None


def incidence_graph(plane: ProjectivePlane) -> Graph:
    """Bipartite point-line graph: points first (0..N-1), then lines (N..2N-1)."""
    index = {p: i for i, p in enumerate(sorted(plane.points))}
    N = len(index)
    edges = [(index[p], N + j) for j, L in enumerate(plane.lines) for p in L]
    name = "Heawood" if plane.q == 2 else f"PG2({plane.q})"
    return build_graph(edges, 2 * N, name=name)


# the labelled Fano plane used for the explicit two-round Heawood strategy
FANO_LINES = ((1, 2, 3), (1, 7, 4), (1, 6, 5), (2, 4, 6), (2, 7, 5), (3, 4, 5), (3, 7, 6))


def fano_plane() -> ProjectivePlane:
    return ProjectivePlane.from_lines(2, FANO_LINES)


def fano_heawood() -> tuple[Graph, dict[int, int]]:
    """Incidence graph of :data:`FANO_LINES` plus the map point label -> vertex."""
    g = incidence_graph(fano_plane())
    return g, {p: p - 1 for p in range(1, 8)}
