from fractions import Fraction
from itertools import product
from math import comb

import pytest

from eccache.caching import (SchemeError, SubfileId, all_demands, config_for_r, demand_census, distinct_demands,
                             make_config, make_demand, random_files, split_file, subsets, symmetric_batch_prefetch)
from eccache.gf2 import BitVec


def test_make_config_examples():
    c = make_config(3, 3, 1, 8)
    assert c.r == 1 and c.file_bits == 24 and c.constructible
    c = make_config(2, 4, 1, 4)
    assert c.r == 2 and c.file_bits == 24
    c = make_config(3, 3, 1.5, 8)
    assert c.r == Fraction(3, 2) and not c.constructible
    with pytest.raises(SchemeError):
        c.r_int


@pytest.mark.parametrize("M", [-1, 4, "7/2"])
def test_make_config_domain(M):
    with pytest.raises(ValueError):
        make_config(3, 3, M)


def test_subsets_colex():
    assert subsets(3, 2) == ((1, 2), (1, 3), (2, 3))
    assert subsets(4, 2) == ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))
    assert subsets(3, 0) == ((),)


def test_prefetch_examples():
    pf = symmetric_batch_prefetch(make_config(3, 3, 1))
    assert pf.cache(1) == {SubfileId(1, (1,)), SubfileId(2, (1,)), SubfileId(3, (1,))}
    pf = symmetric_batch_prefetch(make_config(3, 3, 2))
    assert pf.cache(1) == {SubfileId(i, s) for i in (1, 2, 3) for s in ((1, 2), (1, 3))}
    pf = symmetric_batch_prefetch(make_config(3, 3, 0))
    assert all(not c for c in pf.caches)


def test_prefetch_reference_cache_lists():
    pf = symmetric_batch_prefetch(make_config(2, 4, 1))
    z3 = {SubfileId(f, s) for f in (1, 2) for s in ((1, 3), (2, 3), (3, 4))}
    assert pf.cache(3) == z3


def test_prefetch_rejects_bad_inputs():
    with pytest.raises(SchemeError):
        symmetric_batch_prefetch(make_config(3, 3, 1.5), seed=0)
    cfg = make_config(3, 3, 1)
    with pytest.raises(ValueError):
        symmetric_batch_prefetch(cfg, [BitVec(0, 23)] * 3)


def _configs():
    for K in range(1, 6):
        for N in (1, 2, 3):
            for r in range(K + 1):
                yield N, K, r


@pytest.mark.parametrize("N,K,r", list(_configs()))
def test_partition_and_budget_invariants(N, K, r):
    cfg = config_for_r(N, K, r, subfile_bits=3)
    files = random_files(cfg, seed=N * 100 + K * 10 + r)
    pf = symmetric_batch_prefetch(cfg, files)
    for i, x in enumerate(files, start=1):
        assert pf.file(i) == x
        assert len(split_file(cfg, x)) == comb(K, r)
    for k in range(1, K + 1):
        cache = pf.cache(k)
        assert len(cache) == N * comb(K - 1, r - 1) if r else len(cache) == 0
        assert pf.cached_bits(k) * N == cfg.M * cfg.file_bits * N  # exactly M*F bits
        assert all(k in m.subset for m in cache)
    for m in pf.payloads:
        assert sum(m in c for c in pf.caches) == r


def test_distinct_demands_examples():
    assert distinct_demands((1, 2, 3)) == 3
    assert distinct_demands((1, 1, 1)) == 1
    assert distinct_demands((1, 2, 1, 2)) == 2


def test_make_demand_parsing():
    cfg = make_config(3, 3, 1)
    assert make_demand("1,2,3", cfg) == (1, 2, 3)
    with pytest.raises(ValueError):
        make_demand("1,2", cfg)
    with pytest.raises(ValueError):
        make_demand("1,2,4", cfg)


def _census_brute(N, K):
    out = {}
    for d in product(range(1, N + 1), repeat=K):
        t = len(set(d))
        out[t] = out.get(t, 0) + 1
    return out


def test_census_examples():
    assert demand_census(3, 3) == {1: 3, 2: 18, 3: 6}
    assert demand_census(2, 4) == {1: 2, 2: 14}
    assert demand_census(1, 5) == {1: 1}


@pytest.mark.parametrize("N,K", [(N, K) for N in range(1, 7) for K in range(1, 7)])
def test_census_matches_enumeration(N, K):
    c = demand_census(N, K)
    assert sum(c.values()) == N ** K
    if N ** K <= 50_000:
        assert c == _census_brute(N, K)


def test_all_demands_count():
    assert sum(1 for _ in all_demands(3, 3)) == 27


@pytest.mark.parametrize("K", range(0, 21))
def test_hockey_stick(K):
    for r in range(K + 1):
        assert sum(comb(i, r) for i in range(K + 1)) == comb(K + 1, r + 1)
