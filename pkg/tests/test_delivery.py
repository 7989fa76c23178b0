from math import comb

import pytest

from eccache.caching import SubfileId, all_demands, config_for_r, make_config, symmetric_batch_prefetch
from eccache.delivery import (DecodeFailure, IndexCodeMatrix, TransmissionSet, choose_leaders, user_decode_linear,
                              yma_terms, yma_transmissions)
from eccache.caching import distinct_demands
from eccache.gf2 import BitMatrix

X = SubfileId


def _terms(d, labels):
    return [set(yma_terms(d, S)) for S in labels]


def test_choose_leaders():
    assert choose_leaders((1, 2, 3)) == (1, 2, 3)
    assert choose_leaders((1, 1, 1)) == (1,)
    assert choose_leaders((1, 2, 1, 2)) == (1, 2)
    assert choose_leaders((2, 1, 2, 3)) == (1, 2, 4)


def test_yma_n3k3_symbols():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg)
    d = (1, 2, 3)
    tx, L = yma_transmissions(cfg, pf, d)
    assert _terms(d, tx.labels) == [{X(1, (2,)), X(2, (1,))}, {X(1, (3,)), X(3, (1,))}, {X(2, (3,)), X(3, (2,))}]
    for S, y in zip(tx.labels, tx.symbols):
        acc = 0
        for m in yma_terms(d, S):
            acc ^= pf.payloads[m].value
        assert y.value == acc


def test_yma_n2k4_symbols():
    cfg = make_config(2, 4, 1)
    pf = symmetric_batch_prefetch(cfg)
    d = (1, 2, 1, 2)
    tx, _ = yma_transmissions(cfg, pf, d)
    reference = [
        {X(1, (2, 3)), X(2, (1, 3)), X(1, (1, 2))},
        {X(1, (2, 4)), X(2, (1, 4)), X(2, (1, 2))},
        {X(2, (3, 4)), X(1, (2, 4)), X(2, (2, 3))},
        {X(1, (3, 4)), X(1, (1, 4)), X(2, (1, 3))},
    ]
    got = _terms(d, tx.labels)
    assert len(got) == 4 and all(p in got for p in reference)


def test_yma_repetition_example_symbol():
    cfg = make_config(3, 3, 2)
    pf = symmetric_batch_prefetch(cfg)
    tx, _ = yma_transmissions(cfg, pf, (1, 1, 1))
    assert _terms((1, 1, 1), tx.labels) == [{X(1, (1, 2)), X(1, (2, 3)), X(1, (1, 3))}]


def test_yma_full_cache_is_silent():
    cfg = make_config(3, 3, 3)
    pf = symmetric_batch_prefetch(cfg)
    tx, L = yma_transmissions(cfg, pf, (1, 2, 3))
    assert len(tx) == 0 and L.num_transmissions == 0
    assert user_decode_linear(cfg, pf, (1, 2, 3), 2, L, []) == pf.file(2)


def test_l_matrix_columns_nonzero_and_match_terms():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg)
    d = (1, 2, 2)
    tx, L = yma_transmissions(cfg, pf, d)
    for j, S in enumerate(tx.labels):
        col = L.matrix.col(j)
        assert col.value
        assert {L.messages[i] for i in range(L.matrix.nrows) if col[i]} == set(yma_terms(d, S))


def test_decode_n3k3_user1():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg, seed=5)
    d = (1, 2, 3)
    tx, L = yma_transmissions(cfg, pf, d)
    assert user_decode_linear(cfg, pf, d, 1, L, list(tx.symbols)) == pf.file(1)


def test_decode_repeated_demand_user2():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg, seed=3)
    d = (1, 1, 1)
    tx, L = yma_transmissions(cfg, pf, d)
    assert tx.labels == ((1, 2), (1, 3))
    # X_{1,{1}} = Y_{12} + X_{1,{2}} (cached), X_{1,{3}} = Y_{12} + Y_{13} + X_{1,{2}}
    y12, y13 = (s.value for s in tx.symbols)
    p = pf.payloads
    assert y12 ^ p[X(1, (2,))].value == p[X(1, (1,))].value
    assert y12 ^ y13 ^ p[X(1, (2,))].value == p[X(1, (3,))].value
    assert user_decode_linear(cfg, pf, d, 2, L, list(tx.symbols)) == pf.file(1)


def test_decode_failure_on_bad_index_code():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg)
    d = (1, 2, 3)
    tx, L = yma_transmissions(cfg, pf, d)
    bad = IndexCodeMatrix(BitMatrix(tuple((1,) * L.matrix.nrows), 1), L.messages)
    with pytest.raises(DecodeFailure):
        user_decode_linear(cfg, pf, d, 1, bad, [tx.symbols[0]])


@pytest.mark.parametrize("N,K,r", [(3, 3, 1), (3, 3, 2), (2, 4, 2), (4, 4, 1)])
def test_count_law_and_universal_decodability(N, K, r):
    cfg = config_for_r(N, K, r, subfile_bits=4)
    pf = symmetric_batch_prefetch(cfg, seed=11)
    files = [pf.file(i) for i in range(1, N + 1)]
    for d in all_demands(N, K):
        tx, L = yma_transmissions(cfg, pf, d)
        assert len(tx) == comb(K, r + 1) - comb(K - distinct_demands(d), r + 1)
        for k in range(1, K + 1):
            assert user_decode_linear(cfg, pf, d, k, L, list(tx.symbols)) == files[d[k - 1] - 1]


def test_transmission_json_roundtrip():
    cfg = make_config(3, 3, 1)
    pf = symmetric_batch_prefetch(cfg)
    tx, _ = yma_transmissions(cfg, pf, (1, 2, 3))
    data = tx.to_json()
    assert data["labels"] == [[1, 2], [1, 3], [2, 3]]
    assert all(len(h) == 2 for h in data["symbols"])
    assert TransmissionSet.from_json(data) == tx
