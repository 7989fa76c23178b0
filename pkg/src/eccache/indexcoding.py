"""Index-coding view of a caching delivery: induced instances, the explicit
generalized independent set, brute-force alpha / min-rank, and validity of a
given index-code matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .caching import CachingConfig, Prefetching, SubfileId, subsets
from .codes import SizeError
from .delivery import IndexCodeMatrix, choose_leaders, combination_for, demanded_messages
from .gf2 import BitMatrix
from ._pykernels import in_j as _in_j_mask

DEFAULT_ALPHA_CAP = 16
DEFAULT_MINRANK_CAP = 24


@dataclass(frozen=True)
class Receiver:
    demand: int
    side_info: frozenset

    def interference(self, n: int) -> frozenset:
        return frozenset(range(n)) - self.side_info - {self.demand}


@dataclass(frozen=True)
class IndexCodingInstance:
    messages: tuple
    receivers: tuple[Receiver, ...]

    def __post_init__(self):
        n = len(self.messages)
        for rc in self.receivers:
            if not 0 <= rc.demand < n:
                raise ValueError(f"demand index {rc.demand} out of range")
            if rc.demand in rc.side_info:
                raise ValueError("a receiver cannot demand a message it already holds")
            if any(not 0 <= x < n for x in rc.side_info):
                raise ValueError("side information index out of range")

    @property
    def n(self) -> int:
        return len(self.messages)

    def masks(self) -> tuple[list[int], list[int]]:
        demands = [rc.demand for rc in self.receivers]
        side = [sum(1 << x for x in rc.side_info) for rc in self.receivers]
        return demands, side

    def to_json(self) -> dict:
        msgs = [m.label() if isinstance(m, SubfileId) else m for m in self.messages]
        return {"messages": msgs,
                "receivers": [{"f": rc.demand, "X": sorted(rc.side_info)} for rc in self.receivers]}

    @classmethod
    def from_json(cls, data: dict) -> "IndexCodingInstance":
        return cls(tuple(data["messages"]),
                   tuple(Receiver(int(r["f"]), frozenset(int(x) for x in r["X"])) for r in data["receivers"]))


def induce(cfg: CachingConfig, pf: Prefetching, d: Sequence[int]) -> IndexCodingInstance:
    """One receiver per (user, missing subfile of its demanded file).

    Only messages of demanded files appear; receivers whose subfile is already
    cached are omitted since they are satisfied without any transmission.
    """
    r = cfg.r_int
    messages = demanded_messages(cfg, d)
    idx = {m: i for i, m in enumerate(messages)}
    receivers = []
    for k in range(1, cfg.K + 1):
        cache = pf.cache(k)
        side = frozenset(idx[m] for m in cache if m in idx)
        for s in subsets(cfg.K, r):
            if k not in s:
                receivers.append(Receiver(idx[SubfileId(d[k - 1], s)], side))
    return IndexCodingInstance(messages, tuple(receivers))


def build_B(cfg: CachingConfig, d: Sequence[int]) -> set[SubfileId]:
    """The generalized independent set from the lower-bound construction:
    for the i-th leader, subfiles of its file whose index set avoids the
    first i leaders."""
    r = cfg.r_int
    leaders = choose_leaders(d)
    B = set()
    for i, lead in enumerate(leaders):
        banned = set(leaders[: i + 1])
        f = d[lead - 1]
        for s in subsets(cfg.K, r):
            if banned.isdisjoint(s):
                B.add(SubfileId(f, s))
    return B


def in_J(inst: IndexCodingInstance, E: Iterable[int]) -> bool:
    E = frozenset(E)
    if not E:
        raise ValueError("E must be nonempty")
    for rc in inst.receivers:
        if rc.demand in E and not (E & rc.side_info):
            return True
    return False


def is_generalized_independent(inst: IndexCodingInstance, H: Iterable[int]) -> bool:
    """Every nonempty subset of H lies in J (checked exhaustively)."""
    H = sorted(set(H))
    demands, side = inst.masks()
    for sel in range(1, 1 << len(H)):
        mask = sum(1 << H[b] for b in range(len(H)) if (sel >> b) & 1)
        if not _in_j_mask(mask, demands, side):
            return False
    return True


def alpha_brute(inst: IndexCodingInstance, cap: int = DEFAULT_ALPHA_CAP) -> int:
    if inst.n > cap:
        raise SizeError(f"{inst.n} messages exceed alpha cap {cap}")
    demands, side = inst.masks()
    return kernels.alpha(inst.n, demands, side)


def free_bits(inst: IndexCodingInstance) -> int:
    return sum(len(rc.side_info) for rc in inst.receivers)


def minrank_brute(inst: IndexCodingInstance, cap: int = DEFAULT_MINRANK_CAP, lower_hint: int = 0) -> int:
    fb = free_bits(inst)
    if fb > cap:
        raise SizeError(f"{fb} free side-information bits exceed min-rank cap {cap}")
    demands, side = inst.masks()
    return kernels.minrank(inst.n, demands, side, lower_hint)


def is_valid_index_code(inst: IndexCodingInstance, L: IndexCodeMatrix | BitMatrix) -> bool:
    m = L.matrix if isinstance(L, IndexCodeMatrix) else L
    if m.nrows != inst.n:
        raise ValueError(f"L has {m.nrows} rows, instance has {inst.n} messages")
    return all(combination_for(m, rc.demand, rc.side_info) is not None for rc in inst.receivers)
