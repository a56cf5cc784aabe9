"""Independent sets of the hypercube Q_n, optionally with one extra Cayley matching.

The graph lives on F_2^n with edges {x, x + e_i}; an extra nonzero vector v
adds the perfect matching {x, x + v}.  Enumeration visits vertices in
increasing index and tries "exclude" before "include", so the stream order is
fixed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import ResourceLimitError
from .gf2core import BitSubset, GF2Vector, _hyperplane_mask, translate_mask

MAX_N = 5


def _check(n: int, extra: Optional[GF2Vector]) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise ResourceLimitError(f"independent-set enumeration is capped at n<={MAX_N}")
    if extra is None:
        return 0
    e = int(extra)
    if getattr(extra, "n", n) != n or not 0 <= e < (1 << n):
        raise ValueError("extra vector has the wrong dimension")
    if e == 0:
        raise ValueError("extra vector must be nonzero")
    return e


def _closed_neighbourhoods(n: int, extra: int, order: Optional[Sequence[int]] = None) -> list[int]:
    """Closed neighbourhood masks, vertices relabelled so ``order[k]`` becomes k."""
    N = 1 << n
    gens = [1 << j for j in range(n)]
    if extra and extra not in gens:
        gens.append(extra)
    if order is None:
        pos = list(range(N))
    else:
        if sorted(order) != list(range(N)):
            raise ValueError("order must be a permutation of the vertices")
        pos = [0] * N
        for k, v in enumerate(order):
            pos[v] = k
    out = [0] * N
    for x in range(N):
        m = 1 << pos[x]
        for g in gens:
            m |= 1 << pos[x ^ g]
        out[pos[x]] = m
    return out


def count_independent_sets(n: int, extra: Optional[GF2Vector] = None, order: Optional[Sequence[int]] = None) -> int:
    """Exact number of independent sets (the empty set included)."""
    e = _check(n, extra)
    closed = _closed_neighbourhoods(n, e, order)

    @lru_cache(maxsize=None)
    def count(avail: int) -> int:
        if not avail:
            return 1
        low = avail & -avail
        v = low.bit_length() - 1
        return count(avail ^ low) + count(avail & ~closed[v])

    return count((1 << (1 << n)) - 1)


def _iter_masks(n: int, e: int) -> Iterator[int]:
    closed = _closed_neighbourhoods(n, e)
    stack = [((1 << (1 << n)) - 1, 0)]
    while stack:
        avail, chosen = stack.pop()
        if not avail:
            yield chosen
            continue
        low = avail & -avail
        v = low.bit_length() - 1
        # Pushed first, popped second: "exclude" is explored before "include".
        stack.append((avail & ~closed[v], chosen | low))
        stack.append((avail ^ low, chosen))


def enumerate_independent_sets(n: int, extra: Optional[GF2Vector] = None) -> Iterator[BitSubset]:
    e = _check(n, extra)
    for mask in _iter_masks(n, e):
        yield BitSubset(n, mask)


def is_independent(I: BitSubset, extra: Optional[GF2Vector] = None) -> bool:
    """No member has a hypercube neighbour (or ``extra``-partner) in ``I``."""
    gens = [1 << j for j in range(I.n)]
    if extra is not None:
        gens.append(int(extra))
    return all(I.mask & translate_mask(I.mask, g, I.n) == 0 for g in gens)


@dataclass(frozen=True)
class ParityProfile:
    even_count: int
    odd_count: int

    @property
    def min_side(self) -> int:
        return min(self.even_count, self.odd_count)


def even_mask(n: int) -> int:
    """Mask of the even-weight vectors, the hyperplane orthogonal to the all-ones vector."""
    return _hyperplane_mask(n, (1 << n) - 1)


def parity_split(I: BitSubset) -> ParityProfile:
    ev = I.mask & even_mask(I.n)
    return ParityProfile(ev.bit_count(), (I.mask ^ ev).bit_count())


def poisson_reference(k: int) -> float:
    """Poisson(1/2) probability of ``k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.exp(-0.5) * 0.5**k / math.factorial(k)


@dataclass(frozen=True)
class ParityHistogram:
    n: int
    counts: dict[int, int]
    total: int

    def __post_init__(self):
        assert sum(self.counts.values()) == self.total

    def frequency(self, k: int) -> float:
        return self.counts.get(k, 0) / self.total

    def rows(self) -> list[dict]:
        """Table rows k, count, frequency, poisson_ref for every observed k."""
        return [
            {"k": k, "count": c, "frequency": c / self.total, "poisson_ref": poisson_reference(k)}
            for k, c in sorted(self.counts.items())
        ]


def parity_balance_distribution(n: int) -> ParityHistogram:
    _check(n, None)
    ev = even_mask(n)
    hist: Counter = Counter()
    for mask in _iter_masks(n, 0):
        e = (mask & ev).bit_count()
        hist[min(e, mask.bit_count() - e)] += 1
    counts = dict(sorted(hist.items()))
    return ParityHistogram(n, counts, sum(counts.values()))


def balanced_tail_count(n: int, beta: float, histogram: Optional[ParityHistogram] = None) -> int:
    """Independent sets whose smaller parity class has more than beta * N members."""
    beta = Fraction(beta)
    if not 0 < beta < Fraction(1, 2):
        raise ValueError("beta must lie strictly between 0 and 1/2")
    hist = histogram if histogram is not None else parity_balance_distribution(n)
    N = 1 << n
    return sum(c for k, c in hist.counts.items() if k > beta * N)


def layered_independent_set(n: int) -> BitSubset:
    """Even-weight vectors of weight < n/2 together with odd-weight vectors of weight > n/2."""
    if n < 2 or n % 2:
        raise ValueError("the layered construction needs an even n >= 2")
    half = n // 2
    idx = [
        x for x in range(1 << n)
        if (w := x.bit_count()) % 2 == 0 and w < half or w % 2 == 1 and w > half
    ]
    out = BitSubset.from_indices(n, idx)
    assert is_independent(out, GF2Vector(n, (1 << n) - 1))
    return out


def layered_size(n: int) -> int:
    half = n // 2
    return sum(math.comb(n, k) for k in range(0, half, 2)) + sum(
        math.comb(n, k) for k in range(half + 1, n + 1) if k % 2
    )


def reference_count(n: int) -> float:
    """2 * sqrt(e) * 2^(N/2), the asymptotic number of independent sets in Q_n."""
    return 2 * math.sqrt(math.e) * 2 ** ((1 << n) / 2)
