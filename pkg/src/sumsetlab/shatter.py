"""Set families over [n] as bitmaps: shattering, down-closure, and the correlation bounds.

Member ``i`` of a family is the subset of [n] whose characteristic vector is
the binary expansion of ``i`` (bit j set means element j is in the subset).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ._bits import indices_to_mask, mask_to_indices
from .errors import ResourceLimitError
from .gf2core import BitSubset, swap_masks
from .independents import even_mask

MAX_GROUND = 20


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GROUND:
            raise ResourceLimitError(f"families are capped at n<={MAX_GROUND}")
        if not 0 <= self.members < (1 << (1 << self.n)):
            raise ValueError("bitmap has bits outside P([n])")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        idx = []
        for s in sets:
            x = 0
            for e in s:
                if not 0 <= e < n:
                    raise ValueError(f"element {e} outside [0, {n})")
                x |= 1 << e
            idx.append(x)
        return cls(n, indices_to_mask(idx))

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "SetFamily":
        return cls(n, indices_to_mask(list(indices)))

    @classmethod
    def power_set(cls, n: int) -> "SetFamily":
        return cls(n, (1 << (1 << n)) - 1)

    def indices(self) -> list[int]:
        return mask_to_indices(self.members, 1 << self.n)

    def sets(self) -> list[list[int]]:
        return [[j for j in range(self.n) if x >> j & 1] for x in self.indices()]

    def __len__(self) -> int:
        return self.members.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def __and__(self, other: "SetFamily") -> "SetFamily":
        if other.n != self.n:
            raise ValueError("ground sets differ")
        return SetFamily(self.n, self.members & other.members)


def _shattered(n: int, mask: int, memo: dict) -> int:
    if mask == 0:
        return 0
    if mask & (mask - 1) == 0:
        return 1
    full = (1 << (1 << n)) - 1
    if mask == full:
        return full
    key = (n, mask)
    hit = memo.get(key)
    if hit is not None:
        return hit
    half = 1 << (n - 1)
    f0 = mask & ((1 << half) - 1)
    f1 = mask >> half
    # J without the top element: shattered by the projection f0 | f1.
    # J with it: J minus top must be shattered by each half separately.
    both = _shattered(n - 1, f0, memo) & _shattered(n - 1, f1, memo)
    out = _shattered(n - 1, f0 | f1, memo) | (both << half)
    memo[key] = out
    return out


def shattered_family(F: SetFamily) -> SetFamily:
    """Every J such that each subset of J is J & X for some member X."""
    return SetFamily(F.n, _shattered(F.n, F.members, {}))


def pajor_check(F: SetFamily) -> tuple[int, int, bool]:
    count = len(shattered_family(F))
    return count, len(F), count >= len(F)


def is_downclosed(J: SetFamily) -> bool:
    m = J.members
    for j, low in enumerate(swap_masks(J.n)):
        if (m & ~low) >> (1 << j) & ~m:
            return False
    return True


def downward_closure(F: SetFamily) -> SetFamily:
    m = F.members
    for j, low in enumerate(swap_masks(F.n)):
        m |= (m & ~low) >> (1 << j)
    return SetFamily(F.n, m)


def fkg_margin(J: SetFamily, K: SetFamily) -> Fraction:
    """|J & K|/2^n - (|J|/2^n)(|K|/2^n), exact; nonnegative for down-closed J, K."""
    if J.n != K.n:
        raise ValueError("ground sets differ")
    if not (is_downclosed(J) and is_downclosed(K)):
        raise ValueError("both families must be down-closed")
    N = 1 << J.n
    return Fraction(len(J & K), N) - Fraction(len(J) * len(K), N * N)


def weight_tail_bound(n: int, gamma: float) -> float:
    """n/2 - sqrt(ln(1/gamma) / 2) * sqrt(n)."""
    return n / 2 - math.sqrt(0.5 * math.log(1 / gamma)) * math.sqrt(n)


def weight_tail_witness(J: SetFamily, gamma: float) -> Optional[int]:
    """Largest member of J (smallest index on ties) if it beats the weight bound.

    A family with more than gamma * 2^n members always has such a member.
    """
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie strictly between 0 and 1")
    if J.members == 0:
        return None
    best = max(J.indices(), key=lambda x: (x.bit_count(), -x))
    bound = weight_tail_bound(J.n, gamma)
    if best.bit_count() > bound:
        return best
    assert len(J) <= gamma * (1 << J.n)
    return None


@dataclass(frozen=True)
class BalancedPipeline:
    even_family: int
    odd_family: int
    shattered_even: int
    shattered_odd: int
    shattered_both: int
    beta_squared_N: float
    witness: Optional[int]

    @property
    def ok(self) -> bool:
        return self.shattered_both >= self.beta_squared_N

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def balanced_pipeline(I: BitSubset, beta: float) -> BalancedPipeline:
    """Shattering chain for an independent set of Q_n with both parity classes > beta * N."""
    n, N = I.n, I.N
    even = even_mask(n)
    FE = SetFamily(n, I.mask & even)
    FO = SetFamily(n, I.mask & ~even)
    if min(len(FE), len(FO)) <= beta * N:
        raise ValueError("both parity classes must exceed beta * N")
    JE, JO = shattered_family(FE), shattered_family(FO)
    J = JE & JO
    return BalancedPipeline(
        len(FE), len(FO), len(JE), len(JO), len(J), beta * beta * N, weight_tail_witness(J, beta * beta)
    )
