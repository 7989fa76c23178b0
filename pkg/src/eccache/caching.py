"""Coded-caching setup: configurations, subfiles, symmetric batch prefetching
and demand statistics.

Users and files are 1-based throughout, matching the usual ``d = (1, 2, 3)``
notation. Subsets of users are sorted tuples and are ordered
colexicographically wherever an order matters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import NamedTuple, Optional, Sequence, Union

from .gf2 import BitVec

Number = Union[int, Fraction, float, str]


class SchemeError(ValueError):
    """The configuration admits rate evaluation only, not a concrete scheme."""


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class CachingConfig:
    N: int
    K: int
    M: Fraction
    subfile_bits: int = 8

    @property
    def r(self) -> Fraction:
        return self.K * self.M / self.N

    @property
    def constructible(self) -> bool:
        return self.r.denominator == 1

    @property
    def r_int(self) -> int:
        if not self.constructible:
            raise SchemeError(f"r = KM/N = {self.r} is not an integer; use memory sharing")
        return int(self.r)

    @property
    def num_subfiles(self) -> int:
        return comb(self.K, self.r_int)

    @property
    def file_bits(self) -> int:
        return self.subfile_bits * self.num_subfiles

    def to_json(self) -> dict:
        m = self.M
        return {"N": self.N, "K": self.K, "M": str(m) if m.denominator != 1 else int(m),
                "subfile_bits": self.subfile_bits}


def make_config(N: int, K: int, M: Number, subfile_bits: int = 8) -> CachingConfig:
    if N < 1 or K < 1:
        raise ValueError(f"need N, K >= 1, got N={N}, K={K}")
    if subfile_bits < 1:
        raise ValueError("subfile_bits must be positive")
    m = as_fraction(M)
    if not 0 <= m <= N:
        raise ValueError(f"cache size M={m} outside [0, N={N}]")
    return CachingConfig(N, K, m, subfile_bits)


def config_for_r(N: int, K: int, r: int, subfile_bits: int = 8) -> CachingConfig:
    return make_config(N, K, Fraction(r * N, K), subfile_bits)


class SubfileId(NamedTuple):
    file: int
    subset: tuple[int, ...]

    def label(self) -> str:
        return f"X{self.file},{{{','.join(map(str, self.subset))}}}"


@lru_cache(maxsize=None)
def subsets(K: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All r-subsets of {1..K} in colexicographic order."""
    return tuple(sorted(combinations(range(1, K + 1), r), key=lambda s: s[::-1]))


@lru_cache(maxsize=None)
def subset_index(K: int, r: int) -> dict:
    return {s: i for i, s in enumerate(subsets(K, r))}


@dataclass(frozen=True)
class Prefetching:
    cfg: CachingConfig
    caches: tuple[frozenset, ...]
    payloads: dict

    def cache(self, user: int) -> frozenset:
        return self.caches[user - 1]

    def cached_bits(self, user: int) -> int:
        return len(self.cache(user)) * self.cfg.subfile_bits

    def file(self, i: int) -> BitVec:
        return assemble_file(self.cfg, [self.payloads[SubfileId(i, s)]
                                        for s in subsets(self.cfg.K, self.cfg.r_int)])


def random_files(cfg: CachingConfig, seed: int) -> list[BitVec]:
    rng = random.Random(seed)
    F = cfg.file_bits
    return [BitVec(rng.getrandbits(F), F) for _ in range(cfg.N)]


def split_file(cfg: CachingConfig, x: BitVec) -> list[BitVec]:
    """Blocks of ``subfile_bits`` bits, block p feeding the p-th colex subset."""
    b = cfg.subfile_bits
    mask = (1 << b) - 1
    return [BitVec((x.value >> (p * b)) & mask, b) for p in range(cfg.num_subfiles)]


def assemble_file(cfg: CachingConfig, parts: Sequence[BitVec]) -> BitVec:
    b = cfg.subfile_bits
    v = 0
    for p, s in enumerate(parts):
        v |= s.value << (p * b)
    return BitVec(v, b * len(parts))


def symmetric_batch_prefetch(cfg: CachingConfig, files: Optional[Sequence[BitVec]] = None,
                             seed: int = 0) -> Prefetching:
    """User k caches every subfile ``X_{i,A}`` with k in A."""
    r = cfg.r_int
    if files is None:
        files = random_files(cfg, seed)
    if len(files) != cfg.N:
        raise ValueError(f"expected {cfg.N} files, got {len(files)}")
    payloads = {}
    for i, x in enumerate(files, start=1):
        if x.length != cfg.file_bits:
            raise ValueError(f"file {i} has {x.length} bits, expected F={cfg.file_bits}")
        for s, part in zip(subsets(cfg.K, r), split_file(cfg, x)):
            payloads[SubfileId(i, s)] = part
    caches = tuple(
        frozenset(SubfileId(i, s) for i in range(1, cfg.N + 1) for s in subsets(cfg.K, r) if k in s)
        for k in range(1, cfg.K + 1)
    )
    return Prefetching(cfg, caches, payloads)


def make_demand(d: Union[str, Sequence[int]], cfg: Optional[CachingConfig] = None) -> tuple[int, ...]:
    if isinstance(d, str):
        d = [int(x) for x in d.replace(" ", "").split(",") if x]
    d = tuple(int(x) for x in d)
    if cfg is not None:
        if len(d) != cfg.K:
            raise ValueError(f"demand has {len(d)} entries, expected K={cfg.K}")
        if any(not 1 <= x <= cfg.N for x in d):
            raise ValueError(f"demand entries must lie in 1..{cfg.N}")
    return d


def distinct_demands(d: Sequence[int]) -> int:
    return len(set(d))


def all_demands(N: int, K: int):
    return product(range(1, N + 1), repeat=K)


def surjections(K: int, t: int) -> int:
    return sum((-1) ** j * comb(t, j) * (t - j) ** K for j in range(t + 1))


def demand_census(N: int, K: int) -> dict[int, int]:
    """Number of demand vectors in [N]^K with exactly t distinct files."""
    return {t: comb(N, t) * surjections(K, t) for t in range(1, min(N, K) + 1)}
