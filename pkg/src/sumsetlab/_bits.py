"""Conversions between integer bitmaps, index arrays and boolean arrays."""

from __future__ import annotations

import numpy as np

# Below this many bits a plain Python loop over set bits beats the numpy round trip.
_SMALL = 4096


def mask_to_bool(mask: int, size: int) -> np.ndarray:
    nbytes = (size + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def bool_to_mask(arr) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_to_indices(mask: int, size: int) -> list[int]:
    if size <= _SMALL:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    return np.flatnonzero(mask_to_bool(mask, size)).tolist()


def indices_to_mask(indices) -> int:
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    if idx.size == 0:
        return 0
    if idx.size <= 64:
        mask = 0
        for i in idx.tolist():
            mask |= 1 << i
        return mask
    arr = np.zeros(int(idx.max()) + 1, dtype=bool)
    arr[idx] = True
    return bool_to_mask(arr)


def random_mask(size: int, rng: np.random.Generator, p: float = 0.5) -> int:
    """Bernoulli(p) subset of range(size) drawn from ``rng``."""
    if p == 0.5:
        nbytes = (size + 7) // 8
        mask = int.from_bytes(rng.bytes(nbytes), "little")
        return mask & ((1 << size) - 1)
    return bool_to_mask(rng.random(size) < p)
