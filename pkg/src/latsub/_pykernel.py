"""Numpy implementation of the subset-scan kernels, used when the compiled one is absent."""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 20


def _ok_mask(pairs: np.ndarray, results: np.ndarray, s: np.ndarray) -> np.ndarray:
    ok = np.ones(s.shape[0], dtype=bool)
    for p, r in zip(pairs, results):
        ok &= ((s & p) != p) | ((s & r) == r)
    return ok


def count_closed(pairs: np.ndarray, results: np.ndarray, lo: int, hi: int) -> int:
    total = 0
    for start in range(lo, hi, CHUNK):
        s = np.arange(start, min(hi, start + CHUNK), dtype=np.uint64)
        total += int(np.count_nonzero(_ok_mask(pairs, results, s)))
    return total


def closed_masks(pairs: np.ndarray, results: np.ndarray, lo: int, hi: int) -> np.ndarray:
    parts = []
    for start in range(lo, hi, CHUNK):
        s = np.arange(start, min(hi, start + CHUNK), dtype=np.uint64)
        parts.append(s[_ok_mask(pairs, results, s)])
    if not parts:
        return np.empty(0, dtype=np.uint64)
    return np.concatenate(parts)
