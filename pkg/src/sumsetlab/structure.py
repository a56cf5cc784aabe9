"""Hyperplane recognisers, exact sumset recognition, and the explicit constructions.

Ties are always broken towards the smallest index: the hyperplane normal, the
greedy basis, and the shift vector ``u`` used by :func:`quotient_shift`.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ._bits import indices_to_mask
from .gf2core import (
    BitSubset,
    GF2Vector,
    SumMode,
    _hyperplane_mask,
    basis_in_complement,
    greedy_basis,
    hyperplane,
    sumset,
    sumset_mask,
    translate_mask,
)

DEFAULT_BUDGET = 10**8


def find_hyperplane_inside(S: BitSubset) -> Optional[GF2Vector]:
    """Smallest nonzero v whose orthogonal hyperplane lies inside S."""
    if not S.mask & 1:
        return None
    for v in range(1, S.N):
        h = _hyperplane_mask(S.n, v)
        if S.mask & h == h:
            return GF2Vector(S.n, v)
    return None


def find_hyperplane_complement_inside(S: BitSubset) -> Optional[GF2Vector]:
    """Smallest nonzero v such that every x with <x, v> = 1 lies in S."""
    full = (1 << S.N) - 1
    for v in range(1, S.N):
        off = full ^ _hyperplane_mask(S.n, v)
        if S.mask & off == off:
            return GF2Vector(S.n, v)
    return None


@dataclass(frozen=True)
class NotFullRank:
    v: GF2Vector


@dataclass(frozen=True)
class FullRank:
    basis: tuple[GF2Vector, ...]


def complement_rank_case(S: BitSubset) -> Union[NotFullRank, FullRank]:
    """Split on whether the complement of S spans F_2^n.

    If it does not, some v is orthogonal to the whole complement, so every x
    with <x, v> = 1 is in S; the smallest such v is returned.
    """
    v = find_hyperplane_complement_inside(S)
    if v is not None:
        return NotFullRank(v)
    basis = basis_in_complement(S)
    assert basis is not None
    return FullRank(tuple(basis))


class Decision(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RecognitionResult:
    decision: Decision
    certificate: Optional[BitSubset]
    nodes_explored: int
    budget: int

    def __post_init__(self):
        if self.decision is Decision.YES:
            assert self.certificate is not None

    def to_dict(self) -> dict:
        return {
            "decision": self.decision.value,
            "certificate": None if self.certificate is None else self.certificate.members(),
            "nodes_explored": self.nodes_explored,
            "budget": self.budget,
        }


class _BudgetExceeded(Exception):
    pass


def is_sumset(S: BitSubset, mode: SumMode = SumMode.INCLUSIVE, budget: int = DEFAULT_BUDGET) -> RecognitionResult:
    """Decide whether S = A + A for some A, with a certificate when it is.

    Any witness can be translated to contain 0, and then A is contained in
    A + A = S.  Members of such an A pairwise sum into S, so A minus 0 is a
    clique in the graph on S \\ {0} with x ~ y iff x + y in S.  Growing a
    witness keeps its sumset inside S, so S is a sumset iff some maximal
    clique works.  Maximal cliques are enumerated Bron-Kerbosch style with
    pivoting; a branch is cut as soon as the sumset of everything still
    reachable misses part of S.
    """
    if SumMode.parse(mode) is not SumMode.INCLUSIVE:
        raise ValueError("recognition is implemented for the inclusive convention only")
    budget = int(budget)
    n, target = S.n, S.mask
    if target == 0:
        return RecognitionResult(Decision.YES, BitSubset(n, 0), 0, budget)
    if not target & 1:
        return RecognitionResult(Decision.NO, None, 0, budget)
    if target == 1:
        return RecognitionResult(Decision.YES, BitSubset(n, 1), 0, budget)

    vertices = target & ~1
    nbr_cache: dict[int, int] = {}

    def nbrs(u: int) -> int:
        m = nbr_cache.get(u)
        if m is None:
            m = translate_mask(target, u, n) & vertices & ~(1 << u)
            nbr_cache[u] = m
        return m

    nodes = 0
    found: list[int] = []

    def expand(R: int, sums_R: int, P: int, X: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if sums_R == target:
            found.append(R)
            return True
        if not P:
            return False
        if target & ~sumset_mask(R | P, n):
            return False
        pivot, best = 0, -1
        rest = P | X
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            c = (P & nbrs(u)).bit_count()
            if c > best:
                pivot, best = u, c
            rest ^= low
        branch = P & ~nbrs(pivot)
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            R2 = R | low
            sums2 = sums_R | translate_mask(R2, v, n)
            if expand(R2, sums2, P & nbrs(v), X & nbrs(v)):
                return True
            P ^= low
            X |= low
            branch ^= low
        return False

    sys.setrecursionlimit(max(sys.getrecursionlimit(), S.N + 1000))
    try:
        ok = expand(1, 1, vertices, 0)
    except _BudgetExceeded:
        return RecognitionResult(Decision.UNKNOWN, None, nodes, budget)
    if ok:
        cert = BitSubset(n, found[0])
        assert sumset(cert).mask == target
        return RecognitionResult(Decision.YES, cert, nodes, budget)
    return RecognitionResult(Decision.NO, None, nodes, budget)


@dataclass(frozen=True)
class CompletionResult:
    v: GF2Vector
    A: BitSubset
    success: bool
    missing: BitSubset

    def __post_init__(self):
        assert self.success == (self.missing.mask == 0)

    def to_dict(self) -> dict:
        return {
            "v": self.v.bits,
            "A": self.A.members(),
            "success": self.success,
            "missing": self.missing.members(),
        }


def hyperplane_completion(S: BitSubset, v: Optional[GF2Vector] = None) -> CompletionResult:
    """Test the candidate A = {0} | (S minus v-perp) for a set S containing v-perp."""
    if v is None:
        v = find_hyperplane_inside(S)
        if v is None:
            raise ValueError("S contains no hyperplane")
    H = hyperplane(v)
    if not H <= S:
        raise ValueError(f"hyperplane of {v} is not contained in S")
    off = S - H
    A = BitSubset(S.n, off.mask | 1)
    AA = sumset(A)
    assert (AA - H).mask == off.mask
    missing = H - AA
    return CompletionResult(v, A, missing.mask == 0, missing)


def quotient_coordinates(n: int, v: int) -> tuple[list[int], np.ndarray]:
    """Greedy basis of v-perp and the map element -> coordinate index in F_2^(n-1)."""
    members = [x for x in range(1 << n) if (x & v).bit_count() % 2 == 0]
    basis = greedy_basis(members, n - 1)
    coord = np.full(1 << n, -1, dtype=np.int64)
    span = np.zeros(1, dtype=np.int64)
    for b in basis:
        span = np.concatenate([span, span ^ b])
    coord[span] = np.arange(span.size)
    return basis, coord


def quotient_shift(S: BitSubset, v: GF2Vector) -> BitSubset:
    """Shift S minus v-perp into v-perp and rewrite it in coordinates of F_2^(n-1)."""
    if v.bits == 0:
        raise ValueError("v must be nonzero")
    if S.n < 2:
        raise ValueError("the quotient needs n >= 2")
    n = S.n
    off = S - hyperplane(v)
    if off.mask == 0:
        return BitSubset(n - 1, 0)
    u = next(x for x in range(1 << n) if (x & v.bits).bit_count() % 2 == 1)
    shifted = np.asarray(off.members(), dtype=np.int64) ^ u
    _, coord = quotient_coordinates(n, v.bits)
    image = coord[shifted]
    assert (image >= 0).all()
    return BitSubset(n - 1, indices_to_mask(image))


def lift_lower_bound(A: BitSubset) -> BitSubset:
    """{0} together with (1, a) for a in A, the new coordinate being the top one."""
    n = A.n + 1
    half = 1 << A.n
    lifted = BitSubset(n, 1 | (A.mask << half))
    top_half = sumset(lifted).mask >> half
    assert top_half == A.mask
    return lifted
