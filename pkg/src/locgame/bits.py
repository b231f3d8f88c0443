"""Vertex sets as Python int bitmasks (bit v set <=> vertex v present)."""
from __future__ import annotations

from typing import Iterable

import numpy as np


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


def mask_to_array(mask: int) -> np.ndarray:
    """Sorted member indices as an int64 array."""
    if not mask:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


def masks_to_words(masks: Iterable[int], n: int) -> np.ndarray:
    W = n_words(n)
    masks = list(masks)
    out = np.zeros((len(masks), W), dtype=np.uint64)
    lim = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(W):
            out[i, w] = (m >> (64 * w)) & lim
    return out


def words_to_masks(words: np.ndarray) -> list[int]:
    if words.shape[0] == 0:
        return []
    if words.shape[1] == 1:
        return words[:, 0].tolist()
    acc = words[:, 0].astype(object)
    for w in range(1, words.shape[1]):
        acc = acc | (words[:, w].astype(object) << (64 * w))
    return list(acc)
