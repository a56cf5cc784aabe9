"""Numba kernels for the exhaustive sumset census (n <= 5, masks fit in uint64)."""

from __future__ import annotations

import numpy as np
import numba
from numba import njit, prange

# The bundled TBB is too old; pick a layer explicitly so numba does not probe it.
numba.config.THREADING_LAYER = "workqueue"

U1 = np.uint64(1)


def swap_masks_u64(n: int) -> np.ndarray:
    N = 1 << n
    out = np.zeros(max(n, 1), dtype=np.uint64)
    for j in range(n):
        width = 1 << j
        block = (1 << width) - 1
        period = (1 << (2 * width)) - 1
        out[j] = block * (((1 << N) - 1) // period)
    return out


@njit(cache=True, inline="always")
def _translate(mask, a, n, masks):
    for j in range(n):
        if (a >> j) & 1:
            s = np.uint64(1 << j)
            low = masks[j]
            mask = ((mask & low) << s) | ((mask >> s) & low)
    return mask


@njit(cache=True, inline="always")
def _ctz(m):
    c = 0
    while (m & 1) == 0:
        m >>= 1
        c += 1
    return c


@njit(cache=True)
def _sumset_u64(a_mask, n, masks):
    acc = np.uint64(0)
    N = 1 << n
    for x in range(N):
        if (a_mask >> np.uint64(x)) & U1:
            acc |= _translate(a_mask, x, n, masks)
    return acc


@njit(parallel=True, cache=True)
def anchored_chunk_sumsets(n, L, high_start, out, masks, distinct):
    """Sumsets of every A = {0} | low | high with the high part fixed per row.

    Generator bit k stands for element k + 1.  Row t of ``out`` covers the
    high pattern ``high_start + t`` (elements L+1 .. N-1) and all 2**L low
    patterns (elements 1 .. L), filled by the recurrence
    sumset(A + x) = sumset(A) | (A + x) translated by x.
    """
    rows = out.shape[0]
    width = 1 << L
    for t in prange(rows):
        high = np.uint64(high_start + t)
        a_high = U1 | (high << np.uint64(L + 1))
        row = out[t]
        row[0] = _sumset_u64(a_high, n, masks)
        for m in range(1, width):
            x = _ctz(m)
            parent = m ^ (1 << x)
            a_new = a_high | (np.uint64(m) << U1)
            row[m] = row[parent] | _translate(a_new, x + 1, n, masks)
        if distinct:
            clear = ~U1
            for m in range(width):
                row[m] &= clear
            if high_start + t == 0:
                row[0] = np.uint64(0)


@njit(parallel=True, cache=True)
def mark_sharded(values, bitmap, shards):
    """Set bit ``v`` of ``bitmap`` for every v; shard t owns words with index % shards == t."""
    total = values.size
    for t in prange(shards):
        for i in range(total):
            v = values[i]
            w = v >> np.uint64(6)
            if w % np.uint64(shards) == np.uint64(t):
                bitmap[w] |= U1 << (v & np.uint64(63))


@njit(cache=True)
def mark_supersets(bitmap, h, full):
    free = full & ~h
    sub = np.uint64(0)
    while True:
        v = h | sub
        bitmap[v >> np.uint64(6)] |= U1 << (v & np.uint64(63))
        if sub == free:
            break
        sub = (sub - free) & free


@njit(cache=True)
def all_sumsets(n, masks, distinct):
    """Sumset of every subset of F_2^n (n <= 4), indexed by generator mask."""
    N = 1 << n
    size = 1 << N
    out = np.zeros(size, dtype=np.uint64)
    for m in range(1, size):
        x = _ctz(m)
        parent = m ^ (1 << x)
        out[m] = out[parent] | _translate(np.uint64(m), x, n, masks)
    if distinct:
        for m in range(size):
            if (m & (m - 1)) == 0:
                out[m] = np.uint64(0)
            else:
                out[m] &= ~U1
    return out


@njit(cache=True)
def count_containing_any(N, hmasks):
    """Number of masks over N bits containing at least one of ``hmasks``."""
    total = 0
    size = np.uint64(1) << np.uint64(N)
    m = np.uint64(0)
    while m < size:
        for h in hmasks:
            if (m & h) == h:
                total += 1
                break
        m += U1
    return total
