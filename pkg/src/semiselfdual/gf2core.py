"""Bit-packed linear algebra over GF(2).

Vectors are stored as Python integers: coordinate ``i`` (0-based) is bit ``i``.
The text form puts coordinate 1 leftmost, so ``BitVector.from_str("1100")``
has bits 0 and 1 set.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EnumerationTooLarge

DEFAULT_CAP = 28

_WORD = 64
_LOW_BITS = 14


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a binary string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        """Build from 0-based coordinate indices."""
        bits = 0
        for i in support:
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector({str(self)!r})"

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.bits >> i & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        _check_len(self, other)
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        _check_len(self, other)
        return BitVector(self.length, self.bits & other.bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if self.bits >> i & 1]


def _check_len(u: BitVector, v: BitVector) -> None:
    if u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} != {v.length}")


def dot(u: BitVector, v: BitVector) -> int:
    _check_len(u, v)
    return (u.bits & v.bits).bit_count() & 1


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """Rows are stored as ints; use :attr:`vectors` for ``BitVector`` views."""

    ncols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row wider than ncols")

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: Optional[int] = None) -> "BitMatrix":
        vecs = [BitVector.from_str(r) for r in rows]
        if ncols is None:
            if not vecs:
                raise ValueError("ncols required for an empty matrix")
            ncols = vecs[0].length
        if any(v.length != ncols for v in vecs):
            raise ValueError("rows have unequal lengths")
        return cls(ncols, tuple(v.bits for v in vecs))

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], ncols: Optional[int] = None) -> "BitMatrix":
        if ncols is None:
            if not vecs:
                raise ValueError("ncols required for an empty matrix")
            ncols = vecs[0].length
        if any(v.length != ncols for v in vecs):
            raise ValueError("rows have unequal lengths")
        return cls(ncols, tuple(v.bits for v in vecs))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def vectors(self) -> list[BitVector]:
        return [BitVector(self.ncols, r) for r in self.rows]

    def to_strings(self) -> list[str]:
        return [str(v) for v in self.vectors]

    def __repr__(self) -> str:
        return f"BitMatrix({self.ncols}, {self.to_strings()})"


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Insert rows into a pivot table keyed by lowest set bit."""
    table: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = low.bit_length() - 1
            if p in table:
                r ^= table[p]
            else:
                table[p] = r
                break
    return table


def _rref_rows(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    table = _echelon(rows)
    pivots = sorted(table)
    # back-substitute from the highest pivot down
    for idx in range(len(pivots) - 1, -1, -1):
        p = pivots[idx]
        r = table[p]
        for q in pivots[idx + 1:]:
            if r >> q & 1:
                r ^= table[q]
        table[p] = r
    return [table[p] for p in pivots], pivots


def reduce(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form of the row space.

    Returns ``(rref, rank, pivots)``; pivots are 0-based column indices.
    """
    rows, pivots = _rref_rows(m.rows)
    return BitMatrix(m.ncols, tuple(rows)), len(rows), pivots


def rank(m: BitMatrix) -> int:
    return len(_echelon(m.rows))


def kernel(m: BitMatrix) -> BitMatrix:
    """Basis (in RREF) of ``{v : m v^T = 0}``."""
    rows, pivots = _rref_rows(m.rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for r, p in zip(rows, pivots):
            if r >> f & 1:
                v |= 1 << p
        basis.append(v)
    out, _ = _rref_rows(basis)
    return BitMatrix(m.ncols, tuple(out))


def reduce_against(table: dict[int, int], v: int) -> int:
    while v:
        p = (v & -v).bit_length() - 1
        if p not in table:
            return v
        v ^= table[p]
    return 0


def member(m: BitMatrix, v: BitVector) -> bool:
    if v.length != m.ncols:
        raise ValueError(f"length mismatch: {v.length} != {m.ncols}")
    return reduce_against(_echelon(m.rows), v.bits) == 0


def solve(m: BitMatrix, target: BitVector) -> Optional[BitVector]:
    """Coefficients ``a`` with ``sum a_i rows[i] == target``, or ``None``."""
    if target.length != m.ncols:
        raise ValueError(f"length mismatch: {target.length} != {m.ncols}")
    n = m.ncols
    mask = (1 << n) - 1
    table: dict[int, int] = {}
    for i, r in enumerate(m.rows):
        x = r | (1 << (n + i))
        while x & mask:
            p = ((x & mask) & -(x & mask)).bit_length() - 1
            if p in table:
                x ^= table[p]
            else:
                table[p] = x
                break
    x = target.bits
    while x & mask:
        p = ((x & mask) & -(x & mask)).bit_length() - 1
        if p not in table:
            return None
        x ^= table[p]
    return BitVector(m.nrows, x >> n)


def span(m: BitMatrix) -> list[int]:
    """All row-space elements (small inputs only)."""
    words = [0]
    for r in m.rows:
        words += [w ^ r for w in words]
    return words


# --- exhaustive weight enumeration -------------------------------------------

def _to_words(x: int, nwords: int) -> np.ndarray:
    mask = (1 << _WORD) - 1
    return np.array([(x >> (_WORD * j)) & mask for j in range(nwords)], dtype=np.uint64)


def weight_distribution(
    rows: Sequence[int],
    n: int,
    offset: int = 0,
    cap: int = DEFAULT_CAP,
    threads: int = 1,
) -> list[int]:
    """Weight counts of ``offset + span(rows)``.

    ``rows`` must be linearly independent for the counts to be codeword
    counts.  Codewords are enumerated by splitting the basis: a table of
    the span of the first rows is built once, and the remaining rows are
    walked in Gray-code order with one row XOR per step.
    """
    k = len(rows)
    if k > cap:
        raise EnumerationTooLarge(k, cap)
    nwords = max(1, -(-n // _WORD))
    a = min(k, _LOW_BITS)
    low, high = rows[:a], rows[a:]

    table = np.zeros((1, nwords), dtype=np.uint64)
    for r in low:
        table = np.concatenate([table, table ^ _to_words(r, nwords)[None, :]])
    high_words = [_to_words(r, nwords) for r in high]

    steps = 1 << len(high)
    threads = max(1, min(threads, steps))
    bounds = [steps * t // threads for t in range(threads + 1)]

    def sweep(start: int, stop: int) -> np.ndarray:
        hist = np.zeros(n + 1, dtype=np.int64)
        gray = start ^ (start >> 1)
        cur = offset
        for j, r in enumerate(high):
            if gray >> j & 1:
                cur ^= r
        cur_w = _to_words(cur, nwords)
        for s in range(start, stop):
            if s != start:
                j = (s & -s).bit_length() - 1
                cur_w = cur_w ^ high_words[j]
            w = np.bitwise_count(table ^ cur_w[None, :]).sum(axis=1)
            hist += np.bincount(w, minlength=n + 1)
        return hist

    if threads == 1:
        total = sweep(0, steps)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda t: sweep(bounds[t], bounds[t + 1]), range(threads)))
        total = sum(parts)
    return [int(c) for c in total]
