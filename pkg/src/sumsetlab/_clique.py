"""Bitset branch-and-bound maximum clique (greedy-colouring bounds, BBMC style)."""

from __future__ import annotations

import numpy as np
from numba import njit

U1 = np.uint64(1)


@njit(cache=True, inline="always")
def _popcount(w):
    w = w - ((w >> np.uint64(1)) & np.uint64(0x5555555555555555))
    w = (w & np.uint64(0x3333333333333333)) + ((w >> np.uint64(2)) & np.uint64(0x3333333333333333))
    w = (w + (w >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((w * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, inline="always")
def _ctz(w):
    return _popcount((w & (~w + U1)) - U1)


@njit(cache=True)
def _colour(P, adj, kmin, U, C):
    """Greedy sequential colouring of P; keeps vertices with colour >= kmin in order."""
    W = P.size
    Q = P.copy()
    Qk = np.empty(W, dtype=np.uint64)
    k = 0
    c = 0
    left = 0
    for i in range(W):
        left += _popcount(Q[i])
    while left > 0:
        k += 1
        Qk[:] = Q
        i = 0
        while i < W:
            w = Qk[i]
            if w == 0:
                i += 1
                continue
            b = _ctz(w)
            v = i * 64 + b
            bit = U1 << np.uint64(b)
            Q[i] &= ~bit
            Qk[i] &= ~bit
            left -= 1
            for j in range(i, W):
                Qk[j] &= ~adj[v, j]
            if k >= kmin:
                U[c] = v
                C[c] = k
                c += 1
    return c, k


@njit(cache=True)
def greedy_clique(adj, degree, N):
    """Repeatedly add the candidate with most neighbours among the remaining candidates."""
    W = adj.shape[1]
    cand = np.zeros(W, dtype=np.uint64)
    for v in range(N):
        cand[v >> 6] |= U1 << np.uint64(v & 63)
    out = np.empty(N, dtype=np.int64)
    size = 0
    first = True
    while True:
        best_v = -1
        best_d = -1
        for i in range(W):
            w = cand[i]
            while w:
                b = _ctz(w)
                w &= w - U1
                v = i * 64 + b
                if first:
                    d = degree[v]
                else:
                    d = 0
                    for j in range(W):
                        d += _popcount(cand[j] & adj[v, j])
                if d > best_d:
                    best_d = d
                    best_v = v
        if best_v < 0:
            break
        out[size] = best_v
        size += 1
        for j in range(W):
            cand[j] &= adj[best_v, j]
        first = False
    return out[:size]


@njit(cache=True)
def max_clique(adj, N, incumbent, budget):
    """Exact maximum clique unless ``budget`` search nodes are exhausted.

    Returns (clique, proven upper bound, nodes, finished).
    """
    W = adj.shape[1]
    root = np.zeros(W, dtype=np.uint64)
    for v in range(N):
        root[v >> 6] |= U1 << np.uint64(v & 63)
    scratch_u = np.empty(N, dtype=np.int64)
    scratch_c = np.empty(N, dtype=np.int64)
    _, chi = _colour(root, adj, N + 1, scratch_u, scratch_c)
    best = incumbent.size
    best_set = incumbent.copy()
    if best >= chi:
        return best_set, best, 0, True
    maxd = chi + 1
    P = np.zeros((maxd, W), dtype=np.uint64)
    U = np.empty((maxd, N), dtype=np.int32)
    C = np.empty((maxd, N), dtype=np.int32)
    pos = np.zeros(maxd, dtype=np.int64)
    cur = np.empty(maxd, dtype=np.int64)
    P[0] = root
    cnt, _ = _colour(P[0], adj, max(1, best + 1), scratch_u, scratch_c)
    U[0, :cnt] = scratch_u[:cnt]
    C[0, :cnt] = scratch_c[:cnt]
    pos[0] = cnt - 1
    nodes = 1
    d = 0
    finished = True
    while d >= 0:
        i = pos[d]
        if i < 0:
            d -= 1
            if d >= 0:
                v = cur[d]
                P[d, v >> 6] &= ~(U1 << np.uint64(v & 63))
                pos[d] -= 1
            continue
        if d + C[d, i] <= best:
            pos[d] = -1
            continue
        v = U[d, i]
        cur[d] = v
        empty = True
        for j in range(W):
            w = P[d, j] & adj[v, j]
            P[d + 1, j] = w
            if w:
                empty = False
        if empty:
            if d + 1 > best:
                best = d + 1
                best_set = cur[: d + 1].copy()
            P[d, v >> 6] &= ~(U1 << np.uint64(v & 63))
            pos[d] -= 1
            continue
        nodes += 1
        if nodes > budget:
            finished = False
            break
        cnt, _ = _colour(P[d + 1], adj, max(1, best - d), scratch_u, scratch_c)
        U[d + 1, :cnt] = scratch_u[:cnt]
        C[d + 1, :cnt] = scratch_c[:cnt]
        pos[d + 1] = cnt - 1
        d += 1
    upper = best
    if not finished and pos[0] >= 0:
        upper = max(best, C[0, pos[0]])
    return best_set, upper, nodes, finished
