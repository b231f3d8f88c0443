"""Knowledge-state semantics of the localization game.

The cops never see the robber; what they know is the set of vertices the
robber may occupy.  A round is: probe (partition the candidate set by
distance vector), then the robber picks any surviving class and moves, which
replaces the class by its closed-neighbourhood union.  The game is won in the
round whose probe leaves no class with two or more members.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .bits import mask_of, members
from .graph import Graph


class Phase(Enum):
    PRE_PROBE = "pre-probe"
    POST_PROBE = "post-probe"


@dataclass(frozen=True)
class KnowledgeState:
    candidates: int
    phase: Phase = Phase.PRE_PROBE

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("knowledge state must have at least one candidate")

    @property
    def vertices(self) -> list[int]:
        return members(self.candidates)

    def __len__(self) -> int:
        return bin(self.candidates).count("1")


CAPTURED = "captured"


def normalize_probe(g: Graph, probe: Iterable[int], k: int | None = None) -> tuple[int, ...]:
    """Distinct, in-range probe vertices as a sorted tuple."""
    out = tuple(sorted(set(int(v) for v in probe)))
    if not out:
        raise ValueError("probe must contain at least one vertex")
    if out[0] < 0 or out[-1] >= g.n:
        raise ValueError(f"probe {out} has a vertex outside 0..{g.n - 1}")
    if k is not None and len(out) > k:
        raise ValueError(f"probe {out} uses {len(out)} cops but only {k} are available")
    return out


def distance_vector(g: Graph, probe: Sequence[int], v: int) -> tuple[int, ...]:
    return tuple(int(g.dist[u, v]) for u in probe)


@dataclass(frozen=True)
class ProbeOutcome:
    """Distance classes of a candidate set, ordered by distance vector."""

    classes: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def captured(self) -> bool:
        return all(bin(c).count("1") == 1 for _, c in self.classes)

    def class_of(self, vector: Sequence[int]) -> int:
        vector = tuple(vector)
        for vec, c in self.classes:
            if vec == vector:
                return c
        raise KeyError(vector)

    def multi_classes(self) -> list[tuple[tuple[int, ...], int]]:
        return [(vec, c) for vec, c in self.classes if c & (c - 1)]


def partition_by_distance(g: Graph, candidates: int, probe: Sequence[int]) -> ProbeOutcome:
    if not candidates:
        raise ValueError("cannot partition an empty candidate set")
    groups: dict[tuple[int, ...], int] = {}
    cols = g.dist[list(probe)] if len(probe) else None
    for v in members(candidates):
        key = tuple(cols[:, v].tolist()) if cols is not None else ()
        groups[key] = groups.get(key, 0) | (1 << v)
    return ProbeOutcome(tuple(sorted(groups.items())))


def spread(g: Graph, cls: int) -> int:
    """Closed-neighbourhood union: where a robber in ``cls`` can be after moving."""
    if not cls:
        raise ValueError("cannot spread an empty set")
    return g.spread_mask(cls)


def step(g: Graph, state: KnowledgeState | int, probe: Sequence[int]):
    """Apply one probe.

    Returns :data:`CAPTURED` when every distance class is a singleton, else the
    list of successor pre-probe states, one per class with two or more members.
    """
    cands = state.candidates if isinstance(state, KnowledgeState) else state
    outcome = partition_by_distance(g, cands, probe)
    multi = outcome.multi_classes()
    if not multi:
        return CAPTURED
    return [KnowledgeState(spread(g, c)) for _, c in multi]


def as_mask(vertices: int | Iterable[int]) -> int:
    return vertices if isinstance(vertices, int) else mask_of(vertices)
