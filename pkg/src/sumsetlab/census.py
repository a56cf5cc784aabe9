"""Exact censuses of sumsets and hyperplane-containing families in F_2^n.

The sumset census scans every generator set A with 0 in A (plus the empty
set): translating A leaves A + A unchanged, so nothing is lost.  Distinct
sumset masks are deduplicated in a flat presence bitmap with one bit per
subset of F_2^n, i.e. 2**(2**n) bits, which is 512 MiB at n = 5 and
impossible at n = 6.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numba
import numpy as np

from . import _kernels as K
from .errors import ResourceLimitError
from .gf2core import SumMode, _hyperplane_mask, rank_ints

MAX_CENSUS_N = 5
MEM_ENV = "SUMSETLAB_MAX_MEM_GB"
DEFAULT_MAX_MEM_GB = 2.0
_LOW_BITS = 20
_BATCH_ROWS = 16


@dataclass(frozen=True)
class CensusResult:
    n: int
    mode: SumMode
    count_sumsets: int
    asymptotic_reference: int
    count_H: Optional[int] = None
    count_intersection: Optional[int] = None
    count_S_minus_H: Optional[int] = None
    count_H_minus_S: Optional[int] = None
    elapsed: float = field(default=0.0, compare=False)
    workers: int = 1

    def __post_init__(self):
        if self.count_intersection is not None:
            assert self.count_intersection + self.count_S_minus_H == self.count_sumsets
            assert self.count_intersection + self.count_H_minus_S == self.count_H

    @property
    def ratio_to_reference(self) -> float:
        return self.count_sumsets / self.asymptotic_reference

    @property
    def symmetric_difference_fraction(self) -> Optional[float]:
        if self.count_S_minus_H is None:
            return None
        return (self.count_S_minus_H + self.count_H_minus_S) / self.count_sumsets

    def to_dict(self, timing: bool = True) -> dict:
        big = lambda v: None if v is None else str(v)
        out = {
            "n": self.n,
            "mode": self.mode.value,
            "count_sumsets": big(self.count_sumsets),
            "count_H": big(self.count_H),
            "count_intersection": big(self.count_intersection),
            "count_S_minus_H": big(self.count_S_minus_H),
            "count_H_minus_S": big(self.count_H_minus_S),
            "asymptotic_reference": big(self.asymptotic_reference),
            "ratio_to_reference": self.ratio_to_reference,
            "symmetric_difference_fraction": self.symmetric_difference_fraction,
            "workers": self.workers,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _check_n(n: int, cap: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > cap:
        raise ResourceLimitError(
            f"n={n} exceeds the cap n<={cap}; a presence bitmap over all subsets of "
            f"F_2^{n} needs 2^{1 << n} bits"
        )


def max_mem_bytes() -> float:
    return float(os.environ.get(MEM_ENV, DEFAULT_MAX_MEM_GB)) * 2**30


def memory_estimate(n: int, bitmaps: int = 1) -> int:
    """Peak bytes for a census at ``n`` holding ``bitmaps`` presence bitmaps."""
    N = 1 << n
    bitmap = max(8, (1 << N) // 8)
    low = min(_LOW_BITS, N - 1)
    rows = min(_BATCH_ROWS, 1 << (N - 1 - low))
    return bitmaps * bitmap + rows * (1 << low) * 8


def _guard_memory(n: int, bitmaps: int) -> None:
    need = memory_estimate(n, bitmaps)
    if need > max_mem_bytes():
        raise ResourceLimitError(
            f"census at n={n} needs about {need / 2**30:.2f} GiB, above the "
            f"{MEM_ENV} limit of {max_mem_bytes() / 2**30:.2f} GiB"
        )


def resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def _new_bitmap(n: int) -> np.ndarray:
    return np.zeros(max(1, (1 << (1 << n)) // 64), dtype=np.uint64)


def _popcount(bitmap: np.ndarray) -> int:
    return int(np.bitwise_count(bitmap).sum(dtype=np.uint64))


def sumset_presence(n: int, mode: SumMode = SumMode.INCLUSIVE, workers: Optional[int] = None) -> np.ndarray:
    """Presence bitmap: bit ``S`` is set iff the subset with mask ``S`` is a sumset."""
    _check_n(n, MAX_CENSUS_N)
    mode = SumMode.parse(mode)
    workers = resolve_workers(workers)
    numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    N = 1 << n
    masks = K.swap_masks_u64(n)
    bitmap = _new_bitmap(n)
    bitmap[0] |= np.uint64(1)  # A = empty set
    low = min(_LOW_BITS, N - 1)
    n_high = 1 << (N - 1 - low)
    rows = min(_BATCH_ROWS, n_high)
    buf = np.empty((rows, 1 << low), dtype=np.uint64)
    distinct = mode is SumMode.DISTINCT
    for start in range(0, n_high, rows):
        count = min(rows, n_high - start)
        view = buf[:count]
        K.anchored_chunk_sumsets(n, low, start, view, masks, distinct)
        K.mark_sharded(view.reshape(-1), bitmap, workers)
    return bitmap


def hyperplane_masks(n: int) -> list[int]:
    return [_hyperplane_mask(n, v) for v in range(1, 1 << n)]


def hyperplane_presence(n: int) -> np.ndarray:
    """Presence bitmap of H_n, built by marking every superset of each hyperplane."""
    _check_n(n, MAX_CENSUS_N)
    N = 1 << n
    bitmap = _new_bitmap(n)
    full = np.uint64((1 << N) - 1)
    for h in hyperplane_masks(n):
        K.mark_supersets(bitmap, np.uint64(h), full)
    return bitmap


def asymptotic_reference(n: int) -> int:
    """``(2^n - 1) * 2^(2^(n-1))``."""
    if not 1 <= n <= 64:
        raise ValueError("n must be in [1, 64]")
    return ((1 << n) - 1) << (1 << (n - 1))


def census_sumsets(n: int, mode: SumMode = SumMode.INCLUSIVE, workers: Optional[int] = None) -> CensusResult:
    _check_n(n, MAX_CENSUS_N)
    _guard_memory(n, 1)
    workers = resolve_workers(workers)
    mode = SumMode.parse(mode)
    t0 = time.perf_counter()
    count = _popcount(sumset_presence(n, mode, workers))
    return CensusResult(
        n=n,
        mode=mode,
        count_sumsets=count,
        asymptotic_reference=asymptotic_reference(n),
        elapsed=time.perf_counter() - t0,
        workers=workers,
    )


def census_hyperplane_family(n: int) -> int:
    """|H_n|: scan of all 2^N subsets for n <= 4, superset marking at n = 5."""
    _check_n(n, MAX_CENSUS_N)
    if n <= 4:
        hm = np.asarray(hyperplane_masks(n), dtype=np.uint64)
        return int(K.count_containing_any(1 << n, hm))
    _guard_memory(n, 1)
    return _popcount(hyperplane_presence(n))


def _affine_consistent(vectors: list[int], n: int) -> tuple[bool, int]:
    """Rank of ``vectors`` and whether <x, v> = 1 for all v is solvable."""
    rows = [v | (1 << n) for v in vectors]
    r_aug = rank_ints(rows)
    r = rank_ints(vectors)
    return r_aug == r, r


def hn_inclusion_exclusion(n: int) -> int:
    """|H_n| as an alternating sum over nonempty sets T of nonzero normals."""
    _check_n(n, 4)
    N = 1 << n
    normals = list(range(1, N))
    total = 0
    for size in range(1, len(normals) + 1):
        sign = 1 if size % 2 else -1
        for T in itertools.combinations(normals, size):
            ok, r = _affine_consistent(list(T), n)
            outside = (1 << (n - r)) if ok else 0
            union = N - outside
            total += sign * (1 << (N - union))
    return total


def census_cross(n: int, mode: SumMode = SumMode.INCLUSIVE, workers: Optional[int] = None) -> CensusResult:
    """Both presence bitmaps and the sizes of their intersection and differences."""
    _check_n(n, MAX_CENSUS_N)
    _guard_memory(n, 2)
    workers = resolve_workers(workers)
    mode = SumMode.parse(mode)
    t0 = time.perf_counter()
    S = sumset_presence(n, mode, workers)
    H = hyperplane_presence(n)
    count_S = _popcount(S)
    count_H = _popcount(H)
    both = _popcount(np.bitwise_and(S, H, out=H))
    return CensusResult(
        n=n,
        mode=mode,
        count_sumsets=count_S,
        asymptotic_reference=asymptotic_reference(n),
        count_H=count_H,
        count_intersection=both,
        count_S_minus_H=count_S - both,
        count_H_minus_S=count_H - both,
        elapsed=time.perf_counter() - t0,
        workers=workers,
    )


def count_incomplete_generators(n: int) -> int:
    """Number of A with A + A != F_2^n (all A, not only anchored ones)."""
    _check_n(n, 4)
    full = np.uint64((1 << (1 << n)) - 1)
    sums = K.all_sumsets(n, K.swap_masks_u64(n), False)
    return int(np.count_nonzero(sums != full))


def incomplete_generators_bound(n: int) -> int:
    return (1 << n) * 3 ** (1 << (n - 1))


def easylower_bound_check(n: int) -> bool:
    """|S_n| >= 2^(2^(n-1))."""
    _check_n(n, 4)
    return census_sumsets(n, workers=1).count_sumsets >= 1 << (1 << (n - 1))


def sizeh_bounds(n: int) -> tuple[int, int, int]:
    """(crude lower, pairwise lower, upper) bounds on |H_n| for n >= 2.

    Upper is the union bound over the 2^n - 1 families H(v); the pairwise
    lower bound subtracts every pairwise intersection of size 2^(2^(n-2)).
    """
    if n < 2:
        raise ValueError("the pairwise bounds need n >= 2")
    upper = asymptotic_reference(n)
    quarter = 1 << (1 << (n - 2))
    pairwise = upper - math.comb((1 << n) - 1, 2) * quarter
    crude = upper - (1 << (2 * n - 1 + (1 << (n - 2))))
    return crude, pairwise, upper


def binary_entropy(x: float) -> float:
    if not 0 <= x <= 1:
        raise ValueError("entropy argument must lie in [0, 1]")
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


@dataclass(frozen=True)
class BoundsReport:
    N: int
    s: int
    k: int
    count_bound: int
    log2_count_bound: float
    regime_threshold: float
    in_regime: bool
    entropy_s_over_N: float

    def to_dict(self) -> dict:
        return {
            "N": str(self.N),
            "s": str(self.s),
            "k": str(self.k),
            # Decimal strings are capped by the interpreter's int->str limit.
            "count_bound": str(self.count_bound) if self.count_bound.bit_length() <= _MAX_DECIMAL_BITS else None,
            "log2_count_bound": self.log2_count_bound,
            "regime_threshold": self.regime_threshold,
            "in_regime": self.in_regime,
            "entropy_s_over_N": self.entropy_s_over_N,
        }


_PREC = 256
_MAX_DECIMAL_BITS = 13000


def _pow2_upper(x) -> int:
    """An integer >= 2**x, given an mpf upper estimate of x >= 0."""
    with mpmath.workprec(_PREC):
        whole = int(mpmath.floor(x))
        frac = x - whole
        # 2**frac to 64 fractional bits, rounded up, then one extra unit for safety.
        scaled = int(mpmath.ceil(mpmath.power(2, frac) * 2**64)) + 1
    if whole >= 64:
        return scaled << (whole - 64)
    return -(-scaled // (1 << (64 - whole)))


def union_count_bound(N: int, s: int) -> BoundsReport:
    """Parameters and the counting bound 2^(N - s/8) + e^(N/2) for unions of k sumsets."""
    N, s = int(N), int(s)
    if N < 2:
        raise ValueError("N must be >= 2")
    if not 1 <= s < N:
        raise ValueError(f"need 1 <= s < N, got s={s}, N={N}")
    with mpmath.workprec(_PREC):
        ln_term = 1 + mpmath.log(mpmath.mpf(N) / s)
        k = int(mpmath.floor(mpmath.mpf(N) / (2 * s * ln_term)))
        eps = mpmath.mpf(2) ** (-(_PREC // 2))
        x1 = (mpmath.mpf(N) - mpmath.mpf(s) / 8) * (1 + eps)
        x2 = (mpmath.mpf(N) / 2) / mpmath.log(2) * (1 + eps)
        bound = _pow2_upper(x1) + _pow2_upper(x2)
        threshold = 64 * mpmath.log(N, 2) ** 2
        log2_bound = float(mpmath.log(mpmath.mpf(2) ** x1 + mpmath.mpf(2) ** x2, 2))
    return BoundsReport(
        N=N,
        s=s,
        k=max(k, 0),
        count_bound=bound,
        log2_count_bound=log2_bound,
        regime_threshold=float(threshold),
        in_regime=bool(s >= threshold and k >= 1),
        entropy_s_over_N=binary_entropy(s / N),
    )
