"""Bit-exact vectors and matrices over GF(2).

Both types pack bits into Python ints: bit ``j`` of a vector (or of a matrix
row) is coordinate ``j``. Values are immutable; every operation returns a new
object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import kernels


def _pack(bits: Iterable[int]) -> int:
    v = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {b!r}")
        if b:
            v |= 1 << j
    return v


@dataclass(frozen=True)
class BitVec:
    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits beyond length")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVec":
        return cls(_pack(bits), len(bits))

    @classmethod
    def from_str(cls, s: str) -> "BitVec":
        return cls.from_bits([int(c) for c in s.strip()])

    @classmethod
    def zeros(cls, length: int) -> "BitVec":
        return cls(0, length)

    @classmethod
    def from_hex(cls, s: str, length: int) -> "BitVec":
        return cls(int(s, 16) if s else 0, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.value >> j) & 1

    def __iter__(self):
        return iter(self.bits())

    def __add__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVec(self.value ^ other.value, self.length)

    __xor__ = __add__

    def bits(self) -> list[int]:
        return [(self.value >> j) & 1 for j in range(self.length)]

    def weight(self) -> int:
        return self.value.bit_count()

    def to_str(self) -> str:
        return "".join(map(str, self.bits()))

    def to_hex(self) -> str:
        width = max(1, -(-self.length // 4))
        return format(self.value, f"0{width}x")

    def __repr__(self) -> str:
        return f"BitVec('{self.to_str()}')"


@dataclass(frozen=True)
class BitMatrix:
    """Dense binary matrix; ``rows[i]`` bit ``j`` is entry (i, j)."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.ncols < 0:
            raise ValueError("ncols must be nonnegative")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row has bits beyond ncols")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        return cls(tuple(_pack(r) for r in rows), ncols)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        return cls.from_lists([[int(c) for c in ln] for ln in lines])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVec:
        return BitVec(self.rows[i], self.ncols)

    def col(self, j: int) -> BitVec:
        return BitVec(sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)), self.nrows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_text(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_lists())

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.col(j).value for j in range(self.ncols)), self.nrows)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return BitMatrix(
            tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows)),
            self.ncols + other.ncols,
        )

    def select_cols(self, cols: Sequence[int]) -> "BitMatrix":
        out = []
        for r in self.rows:
            out.append(sum(((r >> c) & 1) << j for j, c in enumerate(cols)))
        return BitMatrix(tuple(out), len(cols))

    def select_rows(self, idx: Sequence[int]) -> "BitMatrix":
        return BitMatrix(tuple(self.rows[i] for i in idx), self.ncols)

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols}:{self.to_lists()})"


def rank(m: BitMatrix) -> int:
    return kernels.rank(m.rows, m.ncols)


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and its (strictly increasing) pivot columns."""
    rows = list(m.rows)
    pivots = []
    r = 0
    for c in range(m.ncols):
        bit = 1 << c
        p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return BitMatrix(tuple(rows), m.ncols), pivots


def solve(a: BitMatrix, b: BitVec) -> Optional[BitVec]:
    """Some ``x`` with ``a @ x == b``, free variables zero; None if inconsistent."""
    if a.nrows != b.length:
        raise ValueError(f"a has {a.nrows} rows but b has length {b.length}")
    n = a.ncols
    aug = BitMatrix(tuple(row | (((b.value >> i) & 1) << n) for i, row in enumerate(a.rows)), n + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return None
    x = 0
    for i, c in enumerate(pivots):
        if (red.rows[i] >> n) & 1:
            x |= 1 << c
    return BitVec(x, n)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= b.rows[j]
            r >>= 1
            j += 1
        out.append(acc)
    return BitMatrix(tuple(out), b.ncols)


def mat_vec(a: BitMatrix, x: BitVec) -> BitVec:
    """``a @ x`` for a column vector ``x``."""
    if a.ncols != x.length:
        raise ValueError(f"cannot multiply {a.shape} by vector of length {x.length}")
    return BitVec(sum(((r & x.value).bit_count() & 1) << i for i, r in enumerate(a.rows)), a.nrows)


def vec_mat(u: BitVec, a: BitMatrix) -> BitVec:
    """Row vector times matrix, ``u @ a``."""
    if u.length != a.nrows:
        raise ValueError(f"cannot multiply vector of length {u.length} by {a.shape}")
    acc = 0
    for i, r in enumerate(a.rows):
        if (u.value >> i) & 1:
            acc ^= r
    return BitVec(acc, a.ncols)


def matrix_to_json(m: BitMatrix) -> list[list[int]]:
    return m.to_lists()


def matrix_from_json(data: Sequence[Sequence[int]], ncols: Optional[int] = None) -> BitMatrix:
    return BitMatrix.from_lists(data, ncols)
