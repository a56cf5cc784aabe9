import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import naive_shattered
from sumsetlab.errors import ResourceLimitError
from sumsetlab.gf2core import BitSubset
from sumsetlab.independents import is_independent, layered_independent_set
from sumsetlab.shatter import (
    SetFamily,
    balanced_pipeline,
    downward_closure,
    fkg_margin,
    is_downclosed,
    pajor_check,
    shattered_family,
    weight_tail_bound,
    weight_tail_witness,
)


def random_family(n, rng, density=0.5):
    N = 1 << n
    bits = rng.random(N) < density
    return SetFamily.from_indices(n, np.flatnonzero(bits).tolist())


def test_shattered_examples():
    for n in (1, 3, 5):
        assert shattered_family(SetFamily.power_set(n)) == SetFamily.power_set(n)
        assert shattered_family(SetFamily.from_indices(n, [0])).indices() == [0]
    F = SetFamily.from_sets(2, [[0], [1]])
    assert shattered_family(F).sets() == [[], [0], [1]]


def test_shattered_matches_trace_oracle():
    rng = np.random.default_rng(8)
    for _ in range(400):
        n = int(rng.integers(1, 8))
        F = random_family(n, rng, float(rng.uniform(0.02, 0.9)))
        assert shattered_family(F).indices() == naive_shattered(n, F.indices())


def test_pajor_examples():
    assert pajor_check(SetFamily.from_indices(3, [0])) == (1, 1, True)
    assert pajor_check(SetFamily.from_sets(2, [[0], [1]])) == (3, 2, True)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pajor_exhaustive(n):
    for m in range(1 << (1 << n)):
        F = SetFamily(n, m)
        count, size, ok = pajor_check(F)
        assert ok and count >= size
        assert is_downclosed(shattered_family(F))


def test_downclosed_examples():
    assert is_downclosed(SetFamily.power_set(4))
    assert not is_downclosed(SetFamily.from_sets(2, [[0]]))
    assert is_downclosed(SetFamily.from_sets(2, [[], [0]]))


def test_downward_closure():
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        F = random_family(n, rng, 0.1)
        D = downward_closure(F)
        assert is_downclosed(D)
        assert F.members & ~D.members == 0
        naive = {y for x in F.indices() for y in range(1 << n) if y & ~x == 0}
        assert set(D.indices()) == naive


def test_fkg_examples():
    P = SetFamily.power_set(3)
    assert fkg_margin(P, P) == 0
    E = SetFamily.from_indices(1, [0])
    assert fkg_margin(E, E) == Fraction(1, 4)
    with pytest.raises(ValueError):
        fkg_margin(SetFamily.from_sets(2, [[0]]), SetFamily.power_set(2))


def test_fkg_nonnegative():
    rng = np.random.default_rng(2)
    for _ in range(500):
        n = int(rng.integers(1, 11))
        J = downward_closure(random_family(n, rng, 0.05))
        K = downward_closure(random_family(n, rng, 0.05))
        margin = fkg_margin(J, K)
        assert isinstance(margin, Fraction) and margin >= 0


def test_weight_tail_examples():
    assert weight_tail_witness(SetFamily.power_set(5), 0.5) == 0b11111
    n = 16
    J = SetFamily.from_indices(n, [x for x in range(1 << n) if bin(x).count("1") >= 8])
    w = weight_tail_witness(J, 0.4)
    assert w is not None and bin(w).count("1") >= 8
    assert weight_tail_bound(16, 0.4) == pytest.approx(8 - math.sqrt(0.5 * math.log(2.5)) * 4)
    with pytest.raises(ValueError):
        weight_tail_witness(J, 1.0)


def test_weight_tail_always_found_when_large():
    rng = np.random.default_rng(3)
    for _ in range(300):
        n = int(rng.integers(2, 11))
        gamma = float(rng.uniform(0.01, 0.9))
        J = downward_closure(random_family(n, rng, 0.03))
        if len(J) > gamma * (1 << n):
            assert weight_tail_witness(J, gamma) is not None


def test_family_cap():
    with pytest.raises(ResourceLimitError):
        SetFamily(21, 0)


def _random_independent_set(n, rng):
    N = 1 << n
    chosen = 0
    for x in rng.permutation(N):
        x = int(x)
        if not any(chosen >> (x ^ (1 << j)) & 1 for j in range(n)) and rng.random() < 0.7:
            chosen |= 1 << x
    return BitSubset(n, chosen)


def test_balanced_pipeline_on_constructed_sets():
    rng = np.random.default_rng(4)
    checked = 0
    for n in (6, 8, 10, 12):
        for _ in range(4):
            I = _random_independent_set(n, rng)
            assert is_independent(I)
            even = sum(1 for x in I.members() if bin(x).count("1") % 2 == 0)
            small = min(even, len(I) - even)
            if small == 0:
                continue
            beta = 0.99 * small / (1 << n)
            res = balanced_pipeline(I, beta)
            assert res.ok
            assert res.shattered_even >= res.even_family
            assert res.shattered_odd >= res.odd_family
            checked += 1
    I = layered_independent_set(6)
    assert balanced_pipeline(I, 0.05).ok
    assert checked >= 8
