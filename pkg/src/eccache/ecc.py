"""Error-correcting delivery: YMA concatenated with a shortest outer code,
an adversarial block-error channel, two-stage decoding and exact rates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterator, Optional, Sequence

from .caching import (CachingConfig, Number, Prefetching, as_fraction, config_for_r, demand_census,
                      distinct_demands)
from .codes import LinearCode, SyndromeDecoder, find_optimal_code, identity_code, optimal_length
from .delivery import IndexCodeMatrix, TransmissionSet, choose_leaders, user_decode_linear, yma_transmissions
from .gf2 import BitVec

VARIANTS = ("single", "all")


def kappa_closed_form(K: int, r: int, Ne: int) -> int:
    return comb(K, r + 1) - comb(K - Ne, r + 1)


@dataclass(frozen=True)
class ConcatenatedScheme:
    cfg: CachingConfig
    demand: tuple[int, ...]
    delta: int
    inner: TransmissionSet
    L: IndexCodeMatrix
    outer: LinearCode

    @property
    def ell(self) -> int:
        return len(self.inner)

    @property
    def n_tx(self) -> int:
        return self.outer.n

    @property
    def leaders(self) -> tuple[int, ...]:
        return choose_leaders(self.demand)

    def to_json(self, seed: Optional[int] = None) -> dict:
        return {
            "format_version": 1,
            "config": self.cfg.to_json(),
            "demand": list(self.demand),
            "delta": self.delta,
            "leaders": list(self.leaders),
            "transmission_labels": [list(s) for s in self.inner.labels],
            "outer": self.outer.to_json(),
            "seed": seed,
        }


def build_scheme(cfg: CachingConfig, pf: Prefetching, d: Sequence[int], delta: int,
                 outer: Optional[LinearCode] = None) -> ConcatenatedScheme:
    """YMA inner code plus an outer code of distance at least 2*delta + 1.

    ``outer`` defaults to ``find_optimal_code(ell, 2*delta + 1)``; delta = 0
    gives the identity code so the plain and protected paths coincide.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    d = tuple(d)
    inner, L = yma_transmissions(cfg, pf, d)
    ell = len(inner)
    if outer is None:
        outer = identity_code(ell) if delta == 0 else find_optimal_code(ell, 2 * delta + 1)
    if outer.k != ell:
        raise ValueError(f"outer code has k={outer.k}, inner code has {ell} symbols")
    if not outer.meets_distance(2 * delta + 1):
        raise ValueError(f"outer code distance {outer.d} < {2 * delta + 1}")
    return ConcatenatedScheme(cfg, d, delta, inner, L, outer)


def transmit(scheme: ConcatenatedScheme) -> list[BitVec]:
    """Block j is the XOR of inner symbols i with G[i][j] = 1."""
    b = scheme.cfg.subfile_bits
    out = []
    for j in range(scheme.n_tx):
        acc = 0
        for i, row in enumerate(scheme.outer.generator.rows):
            if (row >> j) & 1:
                acc ^= scheme.inner.symbols[i].value
        out.append(BitVec(acc, b))
    return out


@dataclass(frozen=True)
class ErrorPattern:
    """Bit flips per corrupted block index; every flip mask is nonzero."""

    flips: tuple[tuple[int, int], ...]

    @property
    def blocks(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.flips)

    def to_json(self, bits: int) -> dict:
        width = max(1, -(-bits // 4))
        return {"blocks": list(self.blocks), "flips": [format(m, f"0{width}x") for _, m in self.flips]}


def corrupt(blocks: Sequence[BitVec], pattern: ErrorPattern) -> list[BitVec]:
    out = list(blocks)
    for j, mask in pattern.flips:
        if not 0 <= j < len(out):
            raise IndexError(f"block index {j} out of range")
        out[j] = BitVec(out[j].value ^ mask, out[j].length)
    return out


def bit_planes(blocks: Sequence[BitVec], bits: int) -> list[BitVec]:
    n = len(blocks)
    return [BitVec(sum(((blk.value >> b) & 1) << j for j, blk in enumerate(blocks)), n) for b in range(bits)]


def recover_symbols(scheme: ConcatenatedScheme, received: Sequence[BitVec],
                    decoder: Optional[SyndromeDecoder] = None) -> tuple[list[BitVec], bool]:
    """Outer-code stage: syndrome-decode each bit plane back to inner symbols."""
    if len(received) != scheme.n_tx:
        raise ValueError(f"expected {scheme.n_tx} blocks, got {len(received)}")
    dec = decoder or SyndromeDecoder(scheme.outer)
    bits = scheme.cfg.subfile_bits
    vals = [0] * scheme.ell
    reliable = True
    for b, plane in enumerate(bit_planes(received, bits)):
        res = dec.decode(plane)
        reliable &= res.reliable
        for i in range(scheme.ell):
            if (res.message.value >> i) & 1:
                vals[i] |= 1 << b
    return [BitVec(v, bits) for v in vals], reliable


def receive_and_decode(scheme: ConcatenatedScheme, pf: Prefetching, user: int, received: Sequence[BitVec],
                       decoder: Optional[SyndromeDecoder] = None) -> tuple[BitVec, bool]:
    """Two-stage decode for one user; returns (file, reliable)."""
    symbols, reliable = recover_symbols(scheme, received, decoder)
    return user_decode_linear(scheme.cfg, pf, scheme.demand, user, scheme.L, symbols), reliable


def adversarial_patterns(n: int, max_blocks: int, bits: int) -> Iterator[tuple[ErrorPattern, tuple[str, ...]]]:
    """Every nonempty set of at most ``max_blocks`` blocks, each block hit by a
    single-bit flip (bit j mod bits) or by flipping all its bits."""
    full = (1 << bits) - 1
    for size in range(1, min(max_blocks, n) + 1):
        for picked in combinations(range(n), size):
            for kinds in product(VARIANTS, repeat=size):
                flips = tuple((j, (1 << (j % bits)) if kind == "single" else full)
                              for j, kind in zip(picked, kinds))
                yield ErrorPattern(flips), kinds


def random_patterns(n: int, max_blocks: int, bits: int, trials: int, seed: int) -> Iterator[tuple[ErrorPattern, tuple[str, ...]]]:
    rng = random.Random(seed)
    top = min(max_blocks, n)
    for _ in range(trials):
        if top == 0:
            yield ErrorPattern(()), ()
            continue
        size = rng.randint(1, top)
        picked = sorted(rng.sample(range(n), size))
        flips = tuple((j, rng.randint(1, (1 << bits) - 1)) for j in picked)
        yield ErrorPattern(flips), ("random",) * size


def check_pattern(scheme: ConcatenatedScheme, pf: Prefetching, blocks: Sequence[BitVec],
                  pattern: ErrorPattern, decoder: SyndromeDecoder) -> dict:
    received = corrupt(blocks, pattern)
    symbols, reliable = recover_symbols(scheme, received, decoder)
    failed = []
    for k in range(1, scheme.cfg.K + 1):
        got = user_decode_linear(scheme.cfg, pf, scheme.demand, k, scheme.L, symbols)
        if got != pf.file(scheme.demand[k - 1]):
            failed.append(k)
    return {"pass": not failed, "failed_users": failed, "reliable": reliable}


def simulate(scheme: ConcatenatedScheme, pf: Prefetching, mode: str = "adversarial",
             max_blocks: Optional[int] = None, trials: int = 100, seed: int = 0) -> dict:
    """Run an error sweep and return a JSON-ready report."""
    bits = scheme.cfg.subfile_bits
    if max_blocks is None:
        max_blocks = scheme.delta
    blocks = transmit(scheme)
    dec = SyndromeDecoder(scheme.outer)
    clean = check_pattern(scheme, pf, blocks, ErrorPattern(()), dec)
    if mode == "adversarial":
        pats = adversarial_patterns(scheme.n_tx, max_blocks, bits)
    elif mode == "random":
        pats = random_patterns(scheme.n_tx, max_blocks, bits, trials, seed)
    else:
        raise ValueError(f"unknown error mode {mode!r}")
    rows = []
    for pat, kinds in pats:
        res = check_pattern(scheme, pf, blocks, pat, dec)
        rows.append({**pat.to_json(bits), "variants": list(kinds),
                     "in_contract": len(pat.flips) <= scheme.delta, **res})
    in_contract = [r for r in rows if r["in_contract"]]
    return {
        "format_version": 1,
        "scheme": scheme.to_json(seed),
        "mode": mode,
        "max_blocks": max_blocks,
        "n_blocks": scheme.n_tx,
        "clean_pass": clean["pass"],
        "patterns": rows,
        "totals": {
            "patterns": len(rows),
            "passed": sum(r["pass"] for r in rows),
            "failed": sum(not r["pass"] for r in rows),
            "in_contract": len(in_contract),
            "in_contract_failed": sum(not r["pass"] for r in in_contract),
        },
    }


@dataclass(frozen=True)
class RateReport:
    rate: Fraction
    transmissions: int
    kappa: int
    delta: int


def rate_for_demand(cfg: CachingConfig, d: Sequence[int], delta: int) -> RateReport:
    r = cfg.r_int
    kap = kappa_closed_form(cfg.K, r, distinct_demands(d))
    n = optimal_length(kap, 2 * delta + 1)
    return RateReport(Fraction(n, comb(cfg.K, r)), n, kap, delta)


def avg_rate(cfg: CachingConfig, delta: int) -> Fraction:
    """Expected optimal delivery rate under uniform demands, exactly."""
    r = cfg.r_int
    N, K = cfg.N, cfg.K
    total = sum(cnt * optimal_length(kappa_closed_form(K, r, t), 2 * delta + 1)
                for t, cnt in demand_census(N, K).items())
    return Fraction(total, N ** K * comb(K, r))


def peak_rate(cfg: CachingConfig, delta: int) -> Fraction:
    r = cfg.r_int
    kap = kappa_closed_form(cfg.K, r, min(cfg.N, cfg.K))
    return Fraction(optimal_length(kap, 2 * delta + 1), comb(cfg.K, r))


def rate_points(N: int, K: int, delta: int, kind: str = "peak") -> list[tuple[Fraction, Fraction]]:
    fn = {"peak": peak_rate, "avg": avg_rate}[kind]
    return [(Fraction(r * N, K), fn(config_for_r(N, K, r), delta)) for r in range(K + 1)]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    hull: list = []
    for p in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def envelope_at(hull: Sequence[tuple[Fraction, Fraction]], M: Fraction) -> Fraction:
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= M <= x1:
            return y0 + (y1 - y0) * (M - x0) / (x1 - x0)
    if len(hull) == 1 and hull[0][0] == M:
        return hull[0][1]
    raise ValueError(f"M={M} outside hull range")


def rate_envelope(N: int, K: int, delta: int, M: Number, kind: str = "peak") -> Fraction:
    """Lower convex envelope of the integer-r rate points, evaluated at M."""
    m = as_fraction(M)
    if not 0 <= m <= N:
        raise ValueError(f"cache size M={m} outside [0, N={N}]")
    return envelope_at(lower_hull(rate_points(N, K, delta, kind)), m)
