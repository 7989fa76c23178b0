import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eccache.gf2 import BitMatrix, BitVec, mat_mul, mat_vec, rank, rref, solve, vec_mat

from oracles import gf2_rank

G633 = BitMatrix.from_lists([[1, 0, 0, 1, 1, 0],
                              [0, 1, 0, 1, 0, 1],
                              [0, 0, 1, 0, 1, 1]])


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BitMatrix(tuple(rows), c)


def test_bitvec_roundtrip_and_self_inverse():
    v = BitVec.from_str("1011001")
    assert v.to_str() == "1011001"
    assert len(v) == 7 and v.weight() == 4
    assert (v + v) == BitVec.zeros(7)
    assert BitVec.from_hex(v.to_hex(), 7) == v


def test_bitvec_rejects_overflow():
    with pytest.raises(ValueError):
        BitVec(8, 3)


def test_rank_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(4, 6)) == 0
    assert rank(G633) == 3


def test_rref_examples():
    red, piv = rref(BitMatrix.identity(3))
    assert red == BitMatrix.identity(3) and piv == [0, 1, 2]
    red, piv = rref(BitMatrix.from_lists([[1, 1], [1, 1]]))
    assert red.to_lists() == [[1, 1], [0, 0]] and piv == [0]
    red, piv = rref(G633)
    assert len(piv) == 3
    # already systematic, so reduction leaves it unchanged
    assert red == G633


def test_solve_examples():
    assert solve(BitMatrix.identity(3), BitVec.from_bits([1, 0, 1])) == BitVec.from_bits([1, 0, 1])
    assert solve(BitMatrix.zeros(3, 3), BitVec.from_bits([0, 1, 0])) is None
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    assert solve(a, BitVec.from_bits([1, 1])) == BitVec.from_bits([0, 1])


def test_solve_free_variables_zero():
    a = BitMatrix.from_lists([[1, 1, 0]])
    assert solve(a, BitVec.from_bits([1])) == BitVec.from_bits([1, 0, 0])


def test_mat_mul_examples():
    a = G633
    assert mat_mul(a, BitMatrix.identity(6)) == a
    assert mat_mul(BitMatrix.from_lists([[1, 1]]), BitMatrix.from_lists([[1], [1]])).to_lists() == [[0]]
    with pytest.raises(ValueError):
        mat_mul(a, a)


def test_text_and_json_forms():
    assert BitMatrix.from_text(G633.to_text()) == G633
    assert BitMatrix.from_lists(G633.to_lists()) == G633
    assert G633.to_text().splitlines()[0] == "100110"


@given(matrices())
def test_rank_matches_span_oracle(m):
    assert rank(m) == gf2_rank(list(m.rows))
    assert rank(m) <= min(m.nrows, m.ncols)


@given(matrices())
def test_rref_preserves_rank_and_pivots(m):
    red, piv = rref(m)
    assert rank(red) == rank(m) == len(piv)
    assert piv == sorted(set(piv))
    for i, c in enumerate(piv):
        col = red.col(c)
        assert col.value == 1 << i


@given(matrices(), st.data())
def test_linearity(a, data):
    x = BitVec(data.draw(st.integers(0, (1 << a.ncols) - 1)), a.ncols)
    y = BitVec(data.draw(st.integers(0, (1 << a.ncols) - 1)), a.ncols)
    assert mat_vec(a, x + y) == mat_vec(a, x) + mat_vec(a, y)


@given(matrices())
def test_transpose_involution(m):
    assert m.T.T == m
    u = BitVec((1 << m.nrows) - 1, m.nrows)
    assert vec_mat(u, m) == mat_vec(m.T, u)


def test_solve_roundtrip_random_systems():
    rng = random.Random(7)
    consistent = 0
    for _ in range(1000):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        a = BitMatrix(tuple(rng.getrandbits(c) for _ in range(r)), c)
        b = BitVec(rng.getrandbits(r), r)
        x = solve(a, b)
        brute = [BitVec(v, c) for v in range(1 << c) if mat_vec(a, BitVec(v, c)) == b]
        if x is None:
            assert not brute
        else:
            consistent += 1
            assert mat_vec(a, x) == b
    assert consistent > 100
