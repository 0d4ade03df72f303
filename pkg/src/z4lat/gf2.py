"""Binary linear codes on int bitsets (bit ``j`` is coordinate ``j``)."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from functools import cached_property

import numpy as np

from z4lat import kernels

#: full Gray-code enumeration is used up to this dimension
FULL_ENUMERATION_MAX_K = 28


class BudgetExceeded(RuntimeError):
    """An ascending-weight scan passed its weight cap without a hit."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2).

    Pivots are taken at the lowest set bit, so the result is canonical for the
    row span.  Returns ``(rows, pivots)`` sorted by pivot.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for i, b in enumerate(basis):
                if (b >> p) & 1:
                    basis[i] = b ^ r
            basis.append(r)
            pivots.append(p)
    order = sorted(range(len(basis)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows)[0])


def to_bits(v: int, n: int) -> np.ndarray:
    return np.array([(v >> j) & 1 for j in range(n)], dtype=np.int64)


def from_bits(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if int(b) & 1:
            out |= 1 << j
    return out


class _Projection:
    """Echelon basis of ``{row & mask}`` for repeated coset membership counts."""

    def __init__(self, rows: Sequence[int], mask: int):
        self.mask = mask
        self.basis, self.pivots = rref(r & mask for r in rows)
        self.kernel_dim = len(rows) - len(self.basis)

    def count(self, target: int) -> int:
        """Number of codewords ``s`` with ``s & mask == target & mask``."""
        t = target & self.mask
        for b, p in zip(self.basis, self.pivots):
            if (t >> p) & 1:
                t ^= b
        return 0 if t else 1 << self.kernel_dim


class BinaryCode:
    """A binary linear code of length ``n`` held by a reduced generator basis."""

    def __init__(self, n: int, rows: Iterable[int] = ()):
        self.n = n
        full = (1 << n) - 1
        rows = [int(r) for r in rows]
        if any(r & ~full for r in rows):
            raise ValueError("row has bits beyond length n")
        self.rows, self.pivots = rref(rows)

    @classmethod
    def from_matrix(cls, matrix) -> BinaryCode:
        m = np.asarray(matrix, dtype=np.int64) % 2
        if m.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return cls(m.shape[1], (from_bits(r) for r in m))

    @classmethod
    def full_space(cls, n: int) -> BinaryCode:
        return cls(n, (1 << j for j in range(n)))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return 1 << self.k

    def __repr__(self) -> str:
        return f"BinaryCode([{self.n},{self.k}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryCode):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.rows)))

    @property
    def generator(self) -> np.ndarray:
        return np.array([to_bits(r, self.n) for r in self.rows], dtype=np.int64).reshape(self.k, self.n)

    @cached_property
    def parity_rows(self) -> list[int]:
        """Basis of the dual code, one row per non-pivot column."""
        pivset = set(self.pivots)
        out = []
        for f in range(self.n):
            if f in pivset:
                continue
            v = 1 << f
            for r, p in zip(self.rows, self.pivots):
                if (r >> f) & 1:
                    v |= 1 << p
            out.append(v)
        return out

    @property
    def parity(self) -> np.ndarray:
        return np.array([to_bits(r, self.n) for r in self.parity_rows],
                        dtype=np.int64).reshape(self.n - self.k, self.n)

    def dual(self) -> BinaryCode:
        return BinaryCode(self.n, self.parity_rows)

    def contains(self, v: int) -> bool:
        return all(popcount(v & h) % 2 == 0 for h in self.parity_rows)

    def is_subcode_of(self, other: BinaryCode) -> bool:
        return self.n == other.n and all(other.contains(r) for r in self.rows)

    def encode(self, message: int) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            if (message >> i) & 1:
                out ^= r
        return out

    def codewords(self) -> Iterator[int]:
        """All codewords, in message order; only sensible for small ``k``."""
        for m in range(self.size):
            yield self.encode(m)

    def _packed_rows(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.uint64)

    def _column_syndromes(self) -> np.ndarray:
        h = self.parity_rows
        cols = np.zeros(self.n, dtype=np.uint64)
        for j in range(self.n):
            s = 0
            for i, row in enumerate(h):
                if (row >> j) & 1:
                    s |= 1 << i
            cols[j] = s
        return cols

    def weight_distribution(self) -> np.ndarray:
        """Number of codewords of each weight 0..n (full enumeration)."""
        if self.k == 0:
            out = np.zeros(self.n + 1, np.int64)
            out[0] = 1
            return out
        return kernels.weight_distribution(self._packed_rows(), self.n)

    def min_weight(self, strategy: str = "auto", max_weight: int = 6) -> int | None:
        """Minimum nonzero weight, or ``None`` for the zero code.

        ``auto`` enumerates all ``2^k`` codewords when ``k <= 28`` and otherwise
        scans candidate supports of increasing weight up to ``max_weight``.
        """
        if self.k == 0:
            return None
        if strategy == "auto":
            strategy = "full_enumeration" if self.k <= FULL_ENUMERATION_MAX_K else "low_weight_scan"
        if strategy == "full_enumeration":
            dist = self.weight_distribution()
            return int(np.nonzero(dist[1:])[0][0]) + 1
        if strategy == "low_weight_scan":
            if self.k == self.n:
                return 1
            cols = self._column_syndromes()
            for w in range(1, max_weight + 1):
                if len(kernels.syndrome_scan(cols, self.n, w, w_min=w, limit=1)):
                    return w
            if self.k <= FULL_ENUMERATION_MAX_K:
                return self.min_weight("full_enumeration")
            raise BudgetExceeded(f"{self!r}: no codeword of weight <= {max_weight}")
        raise ValueError(f"unknown strategy {strategy!r}")

    def is_doubly_even(self) -> bool:
        """All weights divisible by 4, decided on the generator rows alone."""
        rows = self.rows
        if any(popcount(r) % 4 for r in rows):
            return False
        return all(popcount(a & b) % 2 == 0 for i, a in enumerate(rows) for b in rows[i + 1:])

    def is_self_orthogonal(self) -> bool:
        return all(popcount(a & b) % 2 == 0 for a in self.rows for b in self.rows)

    def low_weight_words(self, w_max: int) -> Iterator[int]:
        """Every codeword of weight ``<= w_max`` once, ascending by (weight, value)."""
        if w_max < 0:
            return
        if self.k == 0:
            yield 0
            return
        if self.size <= kernels.scan_size(self.n, w_max) or self.k == self.n:
            words = self._all_words()
            words = words[np.bitwise_count(words) <= w_max]
        else:
            words = kernels.syndrome_scan(self._column_syndromes(), self.n, w_max)
        weights = np.bitwise_count(words)
        for i in np.lexsort((words, weights)):
            yield int(words[i])

    def _all_words(self) -> np.ndarray:
        if self.k > 26:
            raise BudgetExceeded(f"{self!r}: refusing to materialize 2^{self.k} words")
        table = np.zeros(1, np.uint64)
        for r in self.rows:
            table = np.concatenate([table, table ^ np.uint64(r)])
        return table

    def projection(self, mask: int) -> _Projection:
        return _Projection(self.rows, mask)

    def coset_count_with_projection(self, shift: int, mask: int, v: int) -> int:
        """``#{s in code : (shift ^ s) & mask == v}``; always 0 or a power of two."""
        if v & ~mask:
            raise ValueError("pattern must lie inside the mask")
        return self.projection(mask).count(shift ^ v)


def direct_sum(a: BinaryCode, b: BinaryCode) -> BinaryCode:
    return BinaryCode(a.n + b.n, list(a.rows) + [r << a.n for r in b.rows])


def repetition(n: int) -> BinaryCode:
    return BinaryCode(n, [(1 << n) - 1])

