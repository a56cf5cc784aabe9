"""Many-sums subsets, sumsets inside a colour set, and union/intersection covers.

Colours are group elements: the edge {a, b} of K_N has colour a + b.  A set A
"fits" a colour set S when every pairwise sum lands in S, i.e. A is a clique
in the graph x ~ y iff x + y in S.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _clique
from ._bits import bool_to_mask, mask_to_bool, random_mask
from .errors import ResourceLimitError
from .gf2core import BitSubset, SumMode, _hyperplane_mask, sumset_mask
from .groups import (
    AbelianGroup,
    ColorSet,
    GroupSubset,
    realizable_colors,
    sumset_mask_g,
)

MAX_CLIQUE_N = 4096
EXACT_COVER_N = 512
DEFAULT_CLIQUE_BUDGET = 2_000_000


class CoverMode(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"


@dataclass(frozen=True)
class CoverSolution:
    mode: CoverMode
    generators: tuple[GroupSubset, ...]
    covered: ColorSet
    target: ColorSet
    verified: bool
    per_step_gain: tuple[int, ...] = ()
    uncoverable: tuple[int, ...] = ()
    failures: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.generators)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "size": len(self.generators),
            "generators": [g.members() for g in self.generators],
            "covered": self.covered.members(),
            "target": self.target.members(),
            "verified": self.verified,
            "per_step_gain": list(self.per_step_gain),
            "uncoverable": list(self.uncoverable),
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class ManySumsWitness:
    A: GroupSubset
    A_prime: GroupSubset
    sums: int

    def __post_init__(self):
        k = len(self.A_prime)
        assert self.A_prime <= self.A
        assert k * k >= len(self.A), "greedy stopped below sqrt|A|"
        if k >= 2:
            assert 4 * self.sums >= k * (k - 1)

    def to_dict(self) -> dict:
        return {"A": self.A.members(), "A_prime": self.A_prime.members(), "sums": self.sums}


def greedy_many_sums(G: AbelianGroup, A: GroupSubset) -> ManySumsWitness:
    """Grow A' from the smallest element of A, adding x whenever A' + x has at
    least (|A'| + 1) / 2 sums not already in A' + A'."""
    if A.mask == 0:
        raise ValueError("A must be nonempty")
    rest = A.mask
    low = rest & -rest
    Ap, sums = low, 0
    rest ^= low
    progress = True
    while progress:
        progress = False
        m = Ap.bit_count()
        scan = rest
        while scan:
            bit = scan & -scan
            x = bit.bit_length() - 1
            new = G.translate_mask(Ap, x) & ~sums
            if 2 * new.bit_count() >= m + 1:
                Ap |= bit
                rest ^= bit
                sums |= new
                k = m + 1
                # |A'+A'| >= (1/2) * sum_{j=2}^{k} j
                assert 4 * sums.bit_count() >= k * (k + 1) - 2
                progress = True
                break
            scan ^= bit
    return ManySumsWitness(A, GroupSubset(G, Ap), sums.bit_count())


def _sum_rows(G: AbelianGroup, idx: np.ndarray) -> np.ndarray:
    return G.add_arrays(idx[:, None], np.arange(G.order, dtype=np.int64)[None, :])


def clique_adjacency(G: AbelianGroup, S: ColorSet, vertices: Optional[np.ndarray] = None) -> np.ndarray:
    """Packed adjacency of x ~ y iff x != y and x + y in S, on ``vertices`` (default all of G).

    Row i, bit j refers to ``vertices[i]`` and ``vertices[j]``.
    """
    N = G.order
    inS = mask_to_bool(S.mask, N)
    if vertices is None:
        vertices = np.arange(N, dtype=np.int64)
    V = vertices.size
    W = max(1, (V + 63) // 64)
    adj = np.zeros((V, W * 8), dtype=np.uint8)
    for start in range(0, V, 256):
        rows = vertices[start:start + 256]
        block = inS[_sum_rows(G, rows)[:, vertices]]
        block[np.arange(rows.size), np.arange(start, start + rows.size)] = False
        adj[start:start + rows.size, : (V + 7) // 8] = np.packbits(block, axis=1, bitorder="little")
    return adj.view(np.uint64).reshape(V, W)


@dataclass(frozen=True)
class CliqueResult:
    A: GroupSubset
    size: int
    exact: bool
    upper_bound: int
    nodes: int

    def to_dict(self) -> dict:
        return {
            "A": self.A.members(),
            "size": self.size,
            "exact": self.exact,
            "upper_bound": self.upper_bound,
            "nodes": self.nodes,
        }


def _clique_in(adj: np.ndarray, budget: int) -> tuple[np.ndarray, int, int, bool]:
    V = adj.shape[0]
    if V == 0:
        return np.zeros(0, dtype=np.int64), 0, 0, True
    degree = np.bitwise_count(adj).sum(axis=1).astype(np.int64)
    # Relabel by decreasing degree so the colouring bound is tighter.
    order = np.argsort(-degree, kind="stable")
    perm = adj_permute(adj, order)
    start = _clique.greedy_clique(perm, degree[order], V)
    best, upper, nodes, done = _clique.max_clique(perm, V, start, int(budget))
    return order[best], int(upper), int(nodes), bool(done)


def adj_permute(adj: np.ndarray, order: np.ndarray) -> np.ndarray:
    V = adj.shape[0]
    dense = np.unpackbits(adj.view(np.uint8), axis=1, bitorder="little", count=V).astype(bool)
    dense = dense[np.ix_(order, order)]
    W = adj.shape[1]
    out = np.zeros((V, W * 8), dtype=np.uint8)
    out[:, : (V + 7) // 8] = np.packbits(dense, axis=1, bitorder="little")
    return out.view(np.uint64).reshape(V, W)


def max_sumset_inside(
    G: AbelianGroup, S: ColorSet, mode: SumMode = SumMode.DISTINCT, budget: int = DEFAULT_CLIQUE_BUDGET
) -> CliqueResult:
    """Largest A with A + A inside S, by branch and bound on the sum graph of S.

    Inclusive mode only keeps vertices x with 2x in S.  If the node budget
    runs out the incumbent is returned with ``exact=False`` and a proven
    upper bound on the optimum.
    """
    mode = SumMode.parse(mode)
    N = G.order
    if N > MAX_CLIQUE_N:
        raise ResourceLimitError(f"clique search is capped at N<={MAX_CLIQUE_N}")
    vertices = np.arange(N, dtype=np.int64)
    if mode is SumMode.INCLUSIVE:
        inS = mask_to_bool(S.mask, N)
        vertices = vertices[inS[G.add_arrays(vertices, vertices)]]
    adj = clique_adjacency(G, S, vertices)
    best, upper, nodes, done = _clique_in(adj, budget)
    members = vertices[best]
    A = GroupSubset.from_indices(G, members.tolist())
    assert sumset_mask_g(G, A.mask, mode is SumMode.DISTINCT) & ~S.mask == 0
    return CliqueResult(A, len(A), done, upper if not done else len(A), nodes)


def random_color_subset(G: AbelianGroup, seed: int, density: float = 0.5) -> ColorSet:
    """Each realizable colour kept independently with probability ``density``."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    mask = random_mask(G.order, rng, density)
    return GroupSubset(G, mask & realizable_colors(G).mask)


def _edge_for(G: AbelianGroup, c: int) -> Optional[tuple[int, int]]:
    for a in range(G.order):
        b = G.add(c, G.neg(a))
        if a != b:
            return (a, b)
    return None


def _grow(G: AbelianGroup, inS: np.ndarray, unc: np.ndarray, seed_pair, rng) -> np.ndarray:
    """Extend a seed pair by the vertex adding the most uncovered colours (random ties)."""
    N = G.order
    idx = np.arange(N, dtype=np.int64)
    A = list(seed_pair)
    cand = np.ones(N, dtype=bool)
    for a in A:
        cand &= inS[G.add_arrays(idx, a)]
        cand[a] = False
    while cand.any():
        xs = idx[cand]
        colors = G.add_arrays(xs[:, None], np.asarray(A)[None, :])
        gain = unc[colors].sum(axis=1)
        top = np.flatnonzero(gain == gain.max())
        x = int(xs[top[rng.integers(top.size)]])
        A.append(x)
        cand &= inS[G.add_arrays(idx, x)]
        cand[x] = False
    return np.asarray(A, dtype=np.int64)


def greedy_union_cover(
    G: AbelianGroup,
    S: ColorSet,
    candidate_budget: int = 16,
    rng_seed: int = 0,
    clique_budget: int = 200_000,
) -> CoverSolution:
    """Cover S by distinct-sum sumsets, each step taking the candidate with the
    most new colours; finish with single edges once the best gain is <= 1."""
    N = G.order
    rng = np.random.default_rng(rng_seed)
    inS = mask_to_bool(S.mask, N)
    realizable = realizable_colors(G).mask
    uncoverable = tuple(GroupSubset(G, S.mask & ~realizable).members())
    residual = S.mask & realizable
    gens: list[GroupSubset] = []
    gains: list[int] = []
    while residual.bit_count() > 1:
        unc = mask_to_bool(residual, N)
        cands: list[np.ndarray] = []
        if N <= EXACT_COVER_N:
            adj = clique_adjacency(G, GroupSubset(G, residual))
            best, _, _, _ = _clique_in(adj, clique_budget)
            cands.append(best)
        colors = np.flatnonzero(unc)
        for _ in range(candidate_budget):
            c = int(colors[rng.integers(colors.size)])
            a = int(rng.integers(N))
            b = G.add(c, G.neg(a))
            if a == b:
                continue
            cands.append(_grow(G, inS, unc, (a, b), rng))
        best_gain, best_mask = 0, 0
        for A in cands:
            m = bool_to_mask(np.bincount(A, minlength=N) > 0) if A.size else 0
            g = (sumset_mask_g(G, m, True) & residual).bit_count()
            if g > best_gain:
                best_gain, best_mask = g, m
        if best_gain <= 1:
            break
        gens.append(GroupSubset(G, best_mask))
        gains.append(best_gain)
        residual &= ~sumset_mask_g(G, best_mask, True)
    while residual:
        low = residual & -residual
        c = low.bit_length() - 1
        a, b = _edge_for(G, c)
        gens.append(GroupSubset.from_indices(G, (a, b)))
        gains.append(1)
        residual ^= low
    covered = 0
    for g in gens:
        s = sumset_mask_g(G, g.mask, True)
        assert s & ~S.mask == 0
        covered |= s
    return CoverSolution(
        CoverMode.UNION,
        tuple(gens),
        GroupSubset(G, covered),
        S,
        covered == S.mask and not uncoverable,
        tuple(gains),
        uncoverable,
    )


def cover_lower_bound(G: AbelianGroup, S: ColorSet, q: Optional[int] = None, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    """ceil(|S| / C(q, 2)) with q the largest distinct-sum sumset inside S.

    When the clique search is not exact its proven upper bound is used for q,
    which keeps the result a valid lower bound.
    """
    size = len(S)
    if size == 0:
        return 0
    if q is None:
        res = max_sumset_inside(G, S, SumMode.DISTINCT, budget)
        q = res.upper_bound
    if q < 2:
        raise ValueError("no colour of S is realizable, so S has no cover")
    return -(-size // math.comb(q, 2))


def intersection_representation(S: BitSubset) -> CoverSolution:
    """Write S as the intersection of the n sumsets of A_i = (S off e_i-perp) | {0}."""
    if not S.mask & 1:
        raise ValueError("0 must be in S")
    n, N = S.n, S.N
    G = AbelianGroup.f2(n)
    full = (1 << N) - 1
    gens, failures = [], []
    inter = full
    for i in range(n):
        perp = _hyperplane_mask(n, 1 << i)
        A = (S.mask & (full ^ perp)) | 1
        AA = sumset_mask(A, n)
        if AA & perp != perp:
            failures.append(i)
        gens.append(GroupSubset(G, A))
        inter &= AA
    return CoverSolution(
        CoverMode.INTERSECTION,
        tuple(gens),
        GroupSubset(G, inter),
        GroupSubset(G, S.mask),
        inter == S.mask,
        failures=tuple(failures),
    )
