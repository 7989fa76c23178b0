"""Leader-based (YMA) delivery and a generic linear per-user decoder."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .caching import CachingConfig, Prefetching, SubfileId, assemble_file, subsets
from .gf2 import BitMatrix, BitVec, solve


class DecodeFailure(RuntimeError):
    """A receiver cannot resolve its demand from the given index code."""


@dataclass(frozen=True)
class IndexCodeMatrix:
    """Rows are messages (``messages[i]``), columns are transmissions."""

    matrix: BitMatrix
    messages: tuple[SubfileId, ...]

    @property
    def num_transmissions(self) -> int:
        return self.matrix.ncols


@dataclass(frozen=True)
class TransmissionSet:
    symbols: tuple[BitVec, ...]
    labels: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def to_json(self) -> dict:
        return {
            "labels": [list(s) for s in self.labels],
            "symbols": [y.to_hex() for y in self.symbols],
            "symbol_bits": self.symbols[0].length if self.symbols else 0,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TransmissionSet":
        b = data["symbol_bits"]
        return cls(tuple(BitVec.from_hex(h, b) for h in data["symbols"]),
                   tuple(tuple(s) for s in data["labels"]))


def demanded_messages(cfg: CachingConfig, d: Sequence[int]) -> tuple[SubfileId, ...]:
    r = cfg.r_int
    return tuple(SubfileId(i, s) for i in sorted(set(d)) for s in subsets(cfg.K, r))


def choose_leaders(d: Sequence[int]) -> tuple[int, ...]:
    """Lowest-indexed user for each distinct demanded file, in user order."""
    seen = set()
    leaders = []
    for k, f in enumerate(d, start=1):
        if f not in seen:
            seen.add(f)
            leaders.append(k)
    return tuple(leaders)


def yma_terms(d: Sequence[int], S: Sequence[int]) -> list[SubfileId]:
    """Subfiles XORed into the transmission labelled by the user set S."""
    return [SubfileId(d[k - 1], tuple(u for u in S if u != k)) for k in S]


def yma_transmissions(cfg: CachingConfig, pf: Prefetching, d: Sequence[int]):
    """YMA symbols over every (r+1)-subset S meeting the leader set.

    Returns ``(TransmissionSet, IndexCodeMatrix)``; S runs in colex order.
    """
    r = cfg.r_int
    K = cfg.K
    leaders = set(choose_leaders(d))
    messages = demanded_messages(cfg, d)
    row_of = {m: i for i, m in enumerate(messages)}
    labels = []
    symbols = []
    cols = []
    if r < K:
        for S in subsets(K, r + 1):
            if not leaders.intersection(S):
                continue
            acc = 0
            col = 0
            for m in yma_terms(d, S):
                acc ^= pf.payloads[m].value
                col ^= 1 << row_of[m]
            labels.append(S)
            symbols.append(BitVec(acc, cfg.subfile_bits))
            cols.append(col)
    expected = comb(K, r + 1) - comb(K - len(leaders), r + 1)
    assert len(symbols) == expected, (len(symbols), expected)
    L = BitMatrix(tuple(cols), len(messages)).transpose() if cols else BitMatrix.zeros(len(messages), 0)
    return TransmissionSet(tuple(symbols), tuple(labels)), IndexCodeMatrix(L, messages)


def combination_for(L: BitMatrix, target_row: int, side_rows: frozenset) -> BitVec | None:
    """Column combination ``u`` with ``L @ u`` equal to the unit vector of
    ``target_row`` on every row outside ``side_rows``; None if none exists."""
    keep = [i for i in range(L.nrows) if i not in side_rows]
    sub = L.select_rows(keep)
    b = BitVec(1 << keep.index(target_row), len(keep))
    return solve(sub, b)


def user_decode_linear(cfg: CachingConfig, pf: Prefetching, d: Sequence[int], user: int,
                       L: IndexCodeMatrix, received: Sequence[BitVec]) -> BitVec:
    """Reassemble the file demanded by ``user`` from its cache and ``received``."""
    if len(received) != L.num_transmissions:
        raise ValueError(f"expected {L.num_transmissions} symbols, got {len(received)}")
    r = cfg.r_int
    cache = pf.cache(user)
    f = d[user - 1]
    row_of = {m: i for i, m in enumerate(L.messages)}
    side = frozenset(row_of[m] for m in cache if m in row_of)
    parts = []
    for s in subsets(cfg.K, r):
        m = SubfileId(f, s)
        if m in cache:
            parts.append(pf.payloads[m])
            continue
        u = combination_for(L.matrix, row_of[m], side)
        if u is None:
            raise DecodeFailure(f"user {user} cannot isolate {m.label()}")
        acc = 0
        for j in range(L.num_transmissions):
            if (u.value >> j) & 1:
                acc ^= received[j].value
        coeffs = 0
        for j in range(L.num_transmissions):
            if (u.value >> j) & 1:
                coeffs ^= L.matrix.col(j).value
        for i in side:
            if (coeffs >> i) & 1:
                acc ^= pf.payloads[L.messages[i]].value
        parts.append(BitVec(acc, cfg.subfile_bits))
    return assemble_file(cfg, parts)
