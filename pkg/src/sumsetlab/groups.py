"""Finite abelian groups Z_{m_1} x ... x Z_{m_r} with mixed-radix indexing.

An element is an integer index; digit ``i`` (radix ``m_i``, least significant
first) is the component in ``Z_{m_i}``.  With all moduli equal to 2 the index
is exactly the little-endian encoding used by :mod:`sumsetlab.gf2core`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._bits import indices_to_mask, mask_to_bool, mask_to_indices, bool_to_mask
from .gf2core import SumMode, translate_mask as _xor_translate


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli or any(m < 2 for m in moduli):
            raise ValueError(f"moduli must be a nonempty list of integers >= 2, got {self.moduli!r}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def f2(cls, n: int) -> "AbelianGroup":
        return cls((2,) * n)

    @classmethod
    def cyclic(cls, N: int) -> "AbelianGroup":
        return cls((N,))

    @cached_property
    def order(self) -> int:
        return int(np.prod(self.moduli, dtype=object))

    @property
    def N(self) -> int:
        return self.order

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for m in self.moduli:
            out.append(s)
            s *= m
        return tuple(out)

    @cached_property
    def is_elementary_2(self) -> bool:
        return all(m == 2 for m in self.moduli)

    @property
    def label(self) -> str:
        if self.is_elementary_2:
            return f"f2:{len(self.moduli)}"
        if len(self.moduli) == 1:
            return f"z:{self.moduli[0]}"
        return ",".join(map(str, self.moduli))

    def _check(self, a) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ValueError(f"element {a} out of range for group of order {self.order}")
        return a

    def to_tuple(self, a: int) -> tuple[int, ...]:
        a = self._check(a)
        out = []
        for m in self.moduli:
            out.append(a % m)
            a //= m
        return tuple(out)

    def from_tuple(self, digits: Sequence[int]) -> int:
        if len(digits) != len(self.moduli):
            raise ValueError("wrong number of components")
        return sum((d % m) * s for d, m, s in zip(digits, self.moduli, self.strides))

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.is_elementary_2:
            return a ^ b
        if len(self.moduli) == 1:
            return (a + b) % self.order
        return self.from_tuple([x + y for x, y in zip(self.to_tuple(a), self.to_tuple(b))])

    def neg(self, a: int) -> int:
        return self.from_tuple([-x for x in self.to_tuple(a)])

    def add_arrays(self, a, b) -> np.ndarray:
        """Vectorised group addition with numpy broadcasting."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.is_elementary_2:
            return a ^ b
        if len(self.moduli) == 1:
            return (a + b) % self.order
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for m, s in zip(self.moduli, self.strides):
            out += (((a // s) % m + (b // s) % m) % m) * s
        return out

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.is_elementary_2:
            return a.copy()
        out = np.zeros_like(a)
        for m, s in zip(self.moduli, self.strides):
            out += ((-((a // s) % m)) % m) * s
        return out

    def translate_mask(self, mask: int, x: int) -> int:
        """Mask of ``{s + x : s in mask}``."""
        N = self.order
        if self.is_elementary_2:
            return _xor_translate(mask, x, len(self.moduli))
        if len(self.moduli) == 1:
            x %= N
            if x == 0:
                return mask
            full = (1 << N) - 1
            return ((mask << x) | (mask >> (N - x))) & full
        arr = mask_to_bool(mask, N)
        idx = np.arange(N)
        return bool_to_mask(arr[self.add_arrays(idx, self.neg(x))])


@dataclass(frozen=True)
class GroupSubset:
    group: AbelianGroup
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.group.order):
            raise ValueError("mask has bits outside the group")

    @classmethod
    def from_indices(cls, group: AbelianGroup, indices: Iterable[int]) -> "GroupSubset":
        indices = [group._check(i) for i in indices]
        return cls(group, indices_to_mask(indices))

    @classmethod
    def full(cls, group: AbelianGroup) -> "GroupSubset":
        return cls(group, (1 << group.order) - 1)

    def members(self) -> list[int]:
        return mask_to_indices(self.mask, self.group.order)

    def __iter__(self):
        return iter(self.members())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        return bool((self.mask >> int(x)) & 1) if 0 <= int(x) < self.group.order else False

    def __le__(self, other: "GroupSubset") -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.members())) + "]"


# Colors of the K_N edge coloring are group elements, so a color set is just a subset.
ColorSet = GroupSubset


def g_add(G: AbelianGroup, a: int, b: int) -> int:
    return G.add(a, b)


def g_neg(G: AbelianGroup, a: int) -> int:
    return G.neg(a)


def cayley_sum_adjacent(G: AbelianGroup, D: GroupSubset, x: int, y: int) -> bool:
    """Edge test in the Cayley sum graph: ``x + y`` lies in ``D``."""
    return G.add(x, y) in D


def sumset_mask_g(G: AbelianGroup, mask: int, distinct: bool) -> int:
    acc = 0
    rest = mask
    while rest:
        low = rest & -rest
        a = low.bit_length() - 1
        acc |= G.translate_mask(mask ^ low if distinct else mask, a)
        rest ^= low
    return acc


def sumset_g(G: AbelianGroup, A: GroupSubset, mode: SumMode = SumMode.INCLUSIVE) -> GroupSubset:
    mode = SumMode.parse(mode)
    return GroupSubset(G, sumset_mask_g(G, A.mask, mode is SumMode.DISTINCT))


def is_independent_in_cayley(G: AbelianGroup, A: GroupSubset, D: GroupSubset) -> bool:
    """No two distinct members of ``A`` sum into ``D``."""
    return sumset_mask_g(G, A.mask, distinct=True) & D.mask == 0


def edge_color(G: AbelianGroup, a: int, b: int) -> int:
    if int(a) == int(b):
        raise ValueError("loops carry no color")
    return G.add(a, b)


def is_rainbow_clique(G: AbelianGroup, V: Sequence[int]) -> bool:
    V = [G._check(v) for v in V]
    if len(set(V)) != len(V):
        raise ValueError("duplicate vertices")
    if len(V) <= 2:
        return True
    arr = np.asarray(V, dtype=np.int64)
    i, j = np.triu_indices(len(V), k=1)
    colors = G.add_arrays(arr[i], arr[j])
    return np.unique(colors).size == colors.size


@dataclass(frozen=True)
class ColorReport:
    multiplicity: tuple[int, ...]
    min: int
    max: int
    min_occurring: int
    occurring: int


def color_fraction_check(G: AbelianGroup) -> ColorReport:
    """How many edges of K_N carry each color ``c`` (pairs ``{a, c - a}``, ``a != c - a``)."""
    N = G.order
    idx = np.arange(N, dtype=np.int64)
    doubles = np.bincount(G.add_arrays(idx, idx), minlength=N)
    mult = (N - doubles) // 2
    occurring = mult[mult > 0]
    return ColorReport(
        multiplicity=tuple(int(m) for m in mult),
        min=int(mult.min()),
        max=int(mult.max()),
        min_occurring=int(occurring.min()) if occurring.size else 0,
        occurring=int(occurring.size),
    )


def realizable_colors(G: AbelianGroup) -> GroupSubset:
    """Colors that are sums of two distinct elements."""
    mult = np.asarray(color_fraction_check(G).multiplicity)
    return GroupSubset(G, bool_to_mask(mult > 0))
