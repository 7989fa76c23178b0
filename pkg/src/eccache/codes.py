"""Binary linear block codes: construction, distance, syndrome decoding and
the search for the shortest code of given dimension and distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import NamedTuple, Optional

from . import kernels
from .gf2 import BitMatrix, BitVec, rank, rref, solve

MAX_DISTANCE_DIM = 24
MAX_SYNDROME_BITS = 24
MAX_SEARCH_K = 7
MAX_SEARCH_D = 7


class RankError(ValueError):
    """Generator matrix does not have full row rank."""


class SizeError(ValueError):
    """Input exceeds an explicit exhaustive-search guard."""


# Shortest binary linear code lengths for 3 <= d <= 7, 1 <= k <= 7.
# Entries with a comment are the lengths used by the worked N, K settings;
# every entry is a result of ``find_optimal_code(k, d, use_table=False)``,
# re-derived by tests/test_codes.py::test_known_table_rederived.
KNOWN_N2 = {
    (1, 3): 3, (1, 4): 4, (1, 5): 5,  # (1, 5): repetition, N = K = 3, M = 2
    (1, 6): 6, (1, 7): 7,
    (2, 3): 5, (2, 4): 6, (2, 5): 8, (2, 6): 9, (2, 7): 11,
    (3, 3): 6,  # N = K = 3, M = 1
    (3, 4): 7, (3, 5): 10, (3, 6): 11, (3, 7): 13,
    (4, 3): 7,  # Hamming, N = 2, K = 4
    (4, 4): 8, (4, 5): 11, (4, 6): 12, (4, 7): 14,
    (5, 3): 9, (5, 4): 10, (5, 5): 13, (5, 6): 14, (5, 7): 15,
    (6, 3): 10,  # N = K = 4, M = 1
    (6, 4): 11, (6, 5): 14, (6, 6): 15, (6, 7): 17,
    (7, 3): 11, (7, 4): 12, (7, 5): 15, (7, 6): 16, (7, 7): 18,
}


@dataclass(frozen=True)
class LinearCode:
    generator: BitMatrix
    d: Optional[int] = field(default=None)

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def t(self) -> int:
        """Number of correctable errors; the empty code corrects anything."""
        if self.d is None:
            return self.n
        return (self.d - 1) // 2

    def meets_distance(self, dmin: int) -> bool:
        return self.k == 0 or (self.d is not None and self.d >= dmin)

    def encode(self, u: BitVec) -> BitVec:
        if u.length != self.k:
            raise ValueError(f"message length {u.length} != k={self.k}")
        acc = 0
        for i, r in enumerate(self.generator.rows):
            if (u.value >> i) & 1:
                acc ^= r
        return BitVec(acc, self.n)

    def is_systematic(self) -> bool:
        mask = (1 << self.k) - 1
        return all(r & mask == 1 << i for i, r in enumerate(self.generator.rows))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "generator": self.generator.to_lists()}

    @classmethod
    def from_json(cls, data: dict) -> "LinearCode":
        g = BitMatrix.from_lists(data["generator"], data["n"])
        code = from_generator(g)
        if data.get("d") is not None and data["d"] != code.d:
            raise ValueError(f"stated d={data['d']} but generator has d={code.d}")
        return code

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k},{self.d}]"


def min_distance(g: BitMatrix) -> Optional[int]:
    """Exact minimum weight over all nonzero codewords; None for k = 0."""
    if g.nrows == 0:
        return None
    if g.nrows > MAX_DISTANCE_DIM:
        raise SizeError(f"k={g.nrows} exceeds the exhaustive distance guard {MAX_DISTANCE_DIM}")
    return kernels.min_weight(list(g.rows), g.ncols)


def from_generator(g: BitMatrix) -> LinearCode:
    if rank(g) != g.nrows:
        raise RankError(f"generator {g.shape} has rank {rank(g)} < {g.nrows}")
    return LinearCode(g, min_distance(g))


def repetition_code(n: int) -> LinearCode:
    return from_generator(BitMatrix(((1 << n) - 1,), n))


def identity_code(k: int) -> LinearCode:
    return LinearCode(BitMatrix.identity(k), 1 if k else None)


def parity_check_matrix(g: BitMatrix) -> BitMatrix:
    """An (n-k) x n matrix ``H`` with ``H @ G^T = 0``."""
    red, pivots = rref(g)
    pset = set(pivots)
    rows = []
    for q in range(g.ncols):
        if q in pset:
            continue
        h = 1 << q
        for i, p in enumerate(pivots):
            if (red.rows[i] >> q) & 1:
                h |= 1 << p
        rows.append(h)
    return BitMatrix(tuple(rows), g.ncols)


class DecodeResult(NamedTuple):
    codeword: BitVec
    message: BitVec
    reliable: bool


class SyndromeDecoder:
    """Coset-leader table decoder for a binary linear code.

    The table holds, for every syndrome reachable by an error of weight at
    most ``t``, the minimum-weight pattern producing it. Syndromes outside the
    table are resolved by continuing the weight-ordered search on demand; the
    resulting estimate is flagged unreliable.
    """

    def __init__(self, code: LinearCode):
        if code.n - code.k > MAX_SYNDROME_BITS:
            raise SizeError(f"n-k={code.n - code.k} exceeds syndrome table guard {MAX_SYNDROME_BITS}")
        self.code = code
        self.parity_check = parity_check_matrix(code.generator)
        h = self.parity_check
        self._h_cols = [h.col(j).value for j in range(code.n)]
        self._gt = code.generator.transpose()
        self.coset_leaders = kernels.coset_table(self._h_cols, code.n, min(code.t, code.n))
        self._extra: dict[int, int] = {}

    def syndrome(self, x: BitVec) -> int:
        s = 0
        for i, r in enumerate(self.parity_check.rows):
            s |= ((r & x.value).bit_count() & 1) << i
        return s

    def _far_leader(self, s: int) -> int:
        if s in self._extra:
            return self._extra[s]
        n = self.code.n
        full = kernels.coset_table(self._h_cols, n, n)
        self._extra.update(full)
        return full[s]

    def decode(self, received: BitVec) -> DecodeResult:
        if received.length != self.code.n:
            raise ValueError(f"received length {received.length} != n={self.code.n}")
        s = self.syndrome(received)
        e = self.coset_leaders.get(s)
        reliable = e is not None
        if e is None:
            e = self._far_leader(s)
        c = BitVec(received.value ^ e, self.code.n)
        u = solve(self._gt, c)
        return DecodeResult(c, u, reliable)


def build_decoder(code: LinearCode) -> SyndromeDecoder:
    return SyndromeDecoder(code)


def decode(dec: SyndromeDecoder, received: BitVec) -> DecodeResult:
    return dec.decode(received)


def griesmer_min_length(k: int, d: int) -> int:
    return sum(-(-d // (1 << i)) for i in range(k))


def sphere_packing_min_length(k: int, d: int) -> int:
    t = (d - 1) // 2
    n = k
    while (1 << (n - k)) < sum(comb(n, i) for i in range(t + 1)):
        n += 1
    return n


def length_lower_bound(k: int, d: int) -> int:
    return max(k, griesmer_min_length(k, d), sphere_packing_min_length(k, d))


def _systematic_code(k: int, n: int, a_rows: list[int]) -> LinearCode:
    r = n - k
    rows = []
    for i, a in enumerate(a_rows):
        row = 1 << i
        for c in range(r):
            if (a >> (r - 1 - c)) & 1:
                row |= 1 << (k + c)
        rows.append(row)
    return from_generator(BitMatrix(tuple(rows), n))


@lru_cache(maxsize=None)
def find_optimal_code(k: int, d: int, use_table: bool = True) -> LinearCode:
    """Shortest binary linear code of dimension ``k`` and distance >= ``d``.

    Lengths are tried upward from the Griesmer / sphere-packing bound; at each
    length a symmetry-reduced exhaustive search decides whether any code
    exists (the reduction to sorted rows and columns loses no equivalence
    class). At the first feasible length the witness is the lexicographically
    smallest systematic ``[I | A]``. With ``use_table`` the length is taken
    from ``KNOWN_N2`` instead of being re-proved.
    """
    if k < 0 or d < 1:
        raise ValueError(f"need k >= 0 and d >= 1, got k={k}, d={d}")
    if k == 0:
        return LinearCode(BitMatrix((), 0), None)
    if d == 1:
        return identity_code(k)
    if d == 2:
        return from_generator(BitMatrix(tuple((1 << i) | (1 << k) for i in range(k)), k + 1))
    if k > MAX_SEARCH_K or d > MAX_SEARCH_D:
        raise SizeError(f"(k={k}, d={d}) exceeds search guard k<={MAX_SEARCH_K}, d<={MAX_SEARCH_D}")
    if use_table and (k, d) in KNOWN_N2:
        n = KNOWN_N2[(k, d)]
    else:
        n = length_lower_bound(k, d)
        while kernels.systematic_search(k, d, n, canonical=True) is None:
            n += 1
    a_rows = kernels.systematic_search(k, d, n, canonical=False)
    if a_rows is None:
        raise AssertionError(f"no [{n},{k},{d}] code found at a length known to be feasible")
    return _systematic_code(k, n, a_rows)


def optimal_length(k: int, d: int) -> int:
    """N_2[k, d], the shortest length of a binary [n, k, >=d] code."""
    return find_optimal_code(k, d).n


def optimal_length_report(k: int, d: int, use_table: bool = True) -> dict:
    code = find_optimal_code(k, d, use_table)
    gr = griesmer_min_length(k, d)
    sp = sphere_packing_min_length(k, d)
    tight = [name for name, v in (("griesmer", gr), ("sphere_packing", sp)) if v == code.n]
    return {
        "k": k,
        "d": d,
        "n": code.n,
        "griesmer": gr,
        "sphere_packing": sp,
        "tight_bounds": tight,
        "code": code.to_json(),
    }
