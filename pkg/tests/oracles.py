"""Naive reference implementations used only by the tests.

Everything here works on plain Python sets and tuples, never on the packed
masks used by the library.
"""

from __future__ import annotations

import itertools


def members(mask):
    return {i for i in range(mask.bit_length()) if mask >> i & 1}


def to_mask(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def sumset_xor(A, distinct=False):
    return {a ^ b for a in A for b in A if not (distinct and a == b)}


def sumset_mod(A, moduli, distinct=False):
    def add(a, b):
        out, s = 0, 1
        for m in moduli:
            out += ((a // s % m + b // s % m) % m) * s
            s *= m
        return out
    return {add(a, b) for a in A for b in A if not (distinct and a == b)}


def all_subsets(N):
    for m in range(1 << N):
        yield m


def naive_sumset_family(n, distinct=False):
    N = 1 << n
    return {to_mask(sumset_xor(members(a), distinct)) for a in all_subsets(N)}


def naive_hyperplane_family(n):
    N = 1 << n
    planes = [to_mask(x for x in range(N) if bin(x & v).count("1") % 2 == 0) for v in range(1, N)]
    return {m for m in all_subsets(N) if any(m & h == h for h in planes)}


def hypercube_independent(mask, n):
    xs = members(mask)
    return all(x ^ (1 << j) not in xs for x in xs for j in range(n))


def transfer_matrix_count(n):
    """i(Q_n) from pairs of independent sets of the two Q_(n-1) halves."""
    if n == 1:
        return 3
    m = n - 1
    halves = [I for I in range(1 << (1 << m)) if hypercube_independent(I, m)]
    return sum(1 for a in halves for b in halves if a & b == 0)


def naive_shattered(n, fam):
    out = []
    for J in range(1 << n):
        traces = {x & J for x in fam}
        if len(traces) == 1 << bin(J).count("1"):
            out.append(J)
    return out


def brute_max_clique(N, adjacent):
    """Largest vertex set with every pair adjacent, by exhaustive search (small N)."""
    verts = list(range(N))
    best = [verts[0]] if verts else []
    for r in range(2, N + 1):
        found = None
        for combo in itertools.combinations(verts, r):
            if all(adjacent(a, b) for a, b in itertools.combinations(combo, 2)):
                found = list(combo)
                break
        if found is None:
            break
        best = found
    return best
