"""Linear algebra and bit-parallel set operations over F_2^n.

Encoding (used by every module and by the CLI wire format):

* an element of F_2^n is an integer index in ``[0, 2**n)``; bit ``j`` of the
  index is coordinate ``j`` (little-endian);
* a subset is an ``N = 2**n`` bit integer mask; bit ``i`` is set iff the
  element with index ``i`` is a member.

Translating a subset by ``a`` permutes bit positions ``i -> i ^ a``.  The
permutation is a product of one masked block swap per set bit of ``a``, so a
translate costs ``popcount(a)`` shifts of the whole mask.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from ._bits import indices_to_mask, mask_to_indices

MAX_DIM = 24


class SumMode(enum.Enum):
    """Whether ``a + a`` counts as a sum (INCLUSIVE) or only distinct pairs do."""

    INCLUSIVE = "inclusive"
    DISTINCT = "distinct"

    @classmethod
    def parse(cls, value) -> "SumMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def _check_dim(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {n!r}")


@dataclass(frozen=True)
class GF2Vector:
    n: int
    bits: int

    def __post_init__(self):
        _check_dim(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"vector index {self.bits} out of range for n={self.n}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "GF2Vector":
        """Build from a coordinate tuple, ``coords[j]`` being coordinate ``j``."""
        bits = 0
        for j, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate {j} must be 0 or 1, got {c!r}")
            bits |= c << j
        return cls(len(coords), bits)

    @classmethod
    def basis(cls, n: int, j: int) -> "GF2Vector":
        return cls(n, 1 << j)

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> j) & 1 for j in range(self.n))

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        _same_dim(self, other)
        return GF2Vector(self.n, self.bits ^ other.bits)

    def __int__(self) -> int:
        return self.bits

    def __index__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        # Most significant coordinate first, the usual way to write a binary number.
        return "b" + format(self.bits, f"0{self.n}b")


def _same_dim(x, y) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")


@lru_cache(maxsize=None)
def swap_masks(n: int) -> tuple[int, ...]:
    """``M_j`` = positions whose index has bit ``j`` clear, for ``j < n``."""
    size = 1 << n
    out = []
    for j in range(n):
        width = 1 << j
        block = (1 << width) - 1
        period = (1 << (2 * width)) - 1
        out.append(block * (((1 << size) - 1) // period))
    return tuple(out)


def translate_mask(mask: int, a: int, n: int) -> int:
    """Bit ``i`` of the result is bit ``i ^ a`` of ``mask``."""
    masks = swap_masks(n)
    j = 0
    while a:
        if a & 1:
            shift = 1 << j
            low = masks[j]
            mask = ((mask & low) << shift) | ((mask >> shift) & low)
        a >>= 1
        j += 1
    return mask


def sumset_mask(mask: int, n: int, distinct: bool = False) -> int:
    """Sumset of a subset mask by XOR-translate accumulation."""
    acc = 0
    count = 0
    rest = mask
    while rest:
        low = rest & -rest
        acc |= translate_mask(mask, low.bit_length() - 1, n)
        rest ^= low
        count += 1
    if distinct:
        # Distinct pairs never sum to 0 in F_2^n; 0 comes only from a + a.
        return acc & ~1 if count >= 2 else 0
    return acc


@dataclass(frozen=True)
class BitSubset:
    n: int
    mask: int

    def __post_init__(self):
        _check_dim(self.n)
        if not 0 <= self.mask < (1 << (1 << self.n)):
            raise ValueError("mask has bits outside the 2^n element range")

    @property
    def N(self) -> int:
        return 1 << self.n

    @classmethod
    def empty(cls, n: int) -> "BitSubset":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "BitSubset":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "BitSubset":
        indices = [int(i) for i in indices]
        for i in indices:
            if not 0 <= i < (1 << n):
                raise ValueError(f"element {i} out of range for n={n}")
        return cls(n, indices_to_mask(indices))

    def members(self) -> list[int]:
        return mask_to_indices(self.mask, self.N)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        i = int(x)
        return 0 <= i < self.N and bool((self.mask >> i) & 1)

    def complement(self) -> "BitSubset":
        return BitSubset(self.n, self.mask ^ ((1 << self.N) - 1))

    def _other(self, other: "BitSubset") -> int:
        _same_dim(self, other)
        return other.mask

    def __and__(self, other):
        return BitSubset(self.n, self.mask & self._other(other))

    def __or__(self, other):
        return BitSubset(self.n, self.mask | self._other(other))

    def __xor__(self, other):
        return BitSubset(self.n, self.mask ^ self._other(other))

    def __sub__(self, other):
        return BitSubset(self.n, self.mask & ~self._other(other))

    def __le__(self, other) -> bool:
        return self.mask & ~self._other(other) == 0

    def issubset(self, other) -> bool:
        return self <= other

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.members())) + "]"


def dot(x: GF2Vector, y: GF2Vector) -> int:
    _same_dim(x, y)
    return (x.bits & y.bits).bit_count() & 1


def hamming_weight(x: GF2Vector) -> int:
    return x.bits.bit_count()


def weight_parity(x: GF2Vector) -> int:
    return x.bits.bit_count() & 1


@lru_cache(maxsize=4096)
def _hyperplane_mask(n: int, v: int) -> int:
    full = (1 << (1 << n)) - 1
    odd = 0
    for j, low in enumerate(swap_masks(n)):
        if (v >> j) & 1:
            odd ^= full ^ low
    return full ^ odd


def hyperplane(v: GF2Vector) -> BitSubset:
    """The subgroup of vectors orthogonal to the nonzero vector ``v``."""
    if v.bits == 0:
        raise ValueError("the zero vector has no hyperplane")
    return BitSubset(v.n, _hyperplane_mask(v.n, v.bits))


def xor_translate(S: BitSubset, a: GF2Vector) -> BitSubset:
    _same_dim(S, a)
    return BitSubset(S.n, translate_mask(S.mask, a.bits, S.n))


def sumset(A: BitSubset, mode: SumMode = SumMode.INCLUSIVE) -> BitSubset:
    mode = SumMode.parse(mode)
    return BitSubset(A.n, sumset_mask(A.mask, A.n, mode is SumMode.DISTINCT))


class _Eliminator:
    """Incremental GF(2) row reduction keyed by leading bit."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, x: int) -> int:
        while x:
            top = x.bit_length() - 1
            row = self.pivots.get(top)
            if row is None:
                return x
            x ^= row
        return 0

    def add(self, x: int) -> bool:
        r = self.reduce(x)
        if r == 0:
            return False
        self.pivots[r.bit_length() - 1] = r
        return True

    def __len__(self):
        return len(self.pivots)


def rank_ints(vectors: Iterable[int]) -> int:
    elim = _Eliminator()
    for v in vectors:
        elim.add(v)
    return len(elim)


def rank(vs: Sequence[GF2Vector]) -> int:
    if vs:
        n = vs[0].n
        for v in vs:
            if v.n != n:
                raise ValueError("vectors must share a dimension")
    return rank_ints(v.bits for v in vs)


def greedy_basis(indices: Iterable[int], limit: int) -> list[int]:
    """Scan ``indices`` in order, keeping every vector that grows the rank."""
    elim = _Eliminator()
    out = []
    for x in indices:
        if elim.add(x):
            out.append(x)
            if len(out) == limit:
                break
    return out


def basis_in_complement(S: BitSubset) -> Optional[list[GF2Vector]]:
    """``n`` independent vectors outside ``S``, or None if the complement is rank-deficient."""
    basis = greedy_basis(S.complement().members(), S.n)
    if len(basis) < S.n:
        return None
    return [GF2Vector(S.n, b) for b in basis]


@dataclass(frozen=True)
class GF2Matrix:
    """Square matrix; ``rows[i]`` dotted with ``x`` gives coordinate ``i`` of ``Mx``."""

    n: int
    rows: tuple[GF2Vector, ...]

    def __post_init__(self):
        _check_dim(self.n)
        if len(self.rows) != self.n or any(r.n != self.n for r in self.rows):
            raise ValueError("a GF2Matrix needs n rows of dimension n")

    @classmethod
    def from_ints(cls, n: int, rows: Sequence[int]) -> "GF2Matrix":
        return cls(n, tuple(GF2Vector(n, r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls.from_ints(n, [1 << i for i in range(n)])

    @classmethod
    def random_invertible(cls, n: int, rng: np.random.Generator) -> "GF2Matrix":
        while True:
            rows = [int(r) for r in rng.integers(0, 1 << n, size=n)]
            if rank_ints(rows) == n:
                return cls.from_ints(n, rows)

    @property
    def rank(self) -> int:
        return rank(list(self.rows))

    @property
    def invertible(self) -> bool:
        return self.rank == self.n

    def columns(self) -> list[int]:
        """Images of the standard basis vectors."""
        cols = []
        for j in range(self.n):
            c = 0
            for i, r in enumerate(self.rows):
                c |= ((r.bits >> j) & 1) << i
            cols.append(c)
        return cols

    def apply(self, x: GF2Vector) -> GF2Vector:
        _same_dim(self, x)
        return GF2Vector(self.n, sum(dot(r, x) << i for i, r in enumerate(self.rows)))


def apply_linear(M: GF2Matrix, S: BitSubset) -> BitSubset:
    """Pointwise image of ``S`` under the invertible matrix ``M``."""
    _same_dim(M, S)
    if not M.invertible:
        raise ValueError("matrix is singular")
    idx = np.asarray(S.members(), dtype=np.int64)
    out = np.zeros_like(idx)
    for j, col in enumerate(M.columns()):
        out ^= ((idx >> j) & 1) * col
    return BitSubset(S.n, indices_to_mask(out.tolist()))
