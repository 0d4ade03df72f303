"""Linear codes over Z4: standard form, duals, residue/torsion, sub and direct sums.

A code is stored by a generator matrix (entries 0..3).  Everything else is
derived from its standard form

    ( I_k1   A      B1 + 2 B2 )
    ( 0      2 I_k2  2 D       )

reached after a recorded column permutation.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from z4lat.gf2 import BinaryCode, from_bits, rref, to_bits


class NonOrthogonalUpper(ValueError):
    def __init__(self, pairs: list[tuple[int, int, int]]):
        self.pairs = pairs
        shown = ", ".join(f"rows {i},{j}: {v}" for i, j, v in pairs[:5])
        super().__init__(f"upper rows not orthogonal mod 4 ({shown})")


class ShapeError(ValueError):
    pass


class NotSelfDual(ValueError):
    pass


class CodeType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    NOT_SELF_DUAL = "NotSelfDual"
    UNKNOWN = "Unknown"


def euclidean_weight(x) -> int:
    x = np.asarray(x) % 4
    return int(np.count_nonzero(x == 1) + 4 * np.count_nonzero(x == 2) + np.count_nonzero(x == 3))


@dataclass(frozen=True, eq=False)
class StandardForm:
    """Blocks of the standard form and the column permutation that exposes it.

    ``perm[j]`` is the original column placed at position ``j``.
    """

    n: int
    k1: int
    k2: int
    A: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    D: np.ndarray
    perm: tuple[int, ...]

    @property
    def k3(self) -> int:
        return self.n - self.k1 - self.k2

    def matrix(self) -> np.ndarray:
        """Generator matrix in permuted coordinates."""
        k1, k2, k3 = self.k1, self.k2, self.k3
        top = np.hstack([np.eye(k1, dtype=np.int64), self.A, self.B1 + 2 * self.B2])
        bottom = np.hstack([np.zeros((k2, k1), np.int64), 2 * np.eye(k2, dtype=np.int64), 2 * self.D])
        return np.vstack([top.reshape(k1, self.n), bottom.reshape(k2, self.n)]) % 4

    def unpermute(self, rows: np.ndarray) -> np.ndarray:
        """Map rows given in permuted coordinates back to original coordinates."""
        out = np.zeros_like(rows)
        out[:, list(self.perm)] = rows
        return out

    def original_matrix(self) -> np.ndarray:
        return self.unpermute(self.matrix())


def standardize(M) -> StandardForm:
    """Row-reduce a Z4 matrix to standard form, permuting columns as needed.

    Odd pivots are exhausted first; the remaining rows are then all even and
    are reduced as a binary matrix.  Zero rows are dropped.
    """
    G = np.array(M, dtype=np.int64, copy=True) % 4
    if G.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = G.shape
    perm = list(range(n))

    def swap_cols(a: int, b: int) -> None:
        if a != b:
            G[:, [a, b]] = G[:, [b, a]]
            perm[a], perm[b] = perm[b], perm[a]

    k1 = 0
    while k1 < m:
        hit = None
        for c in range(k1, n):
            odd = np.nonzero(G[k1:, c] % 2)[0]
            if len(odd):
                hit = (k1 + int(odd[0]), c)
                break
        if hit is None:
            break
        r, c = hit
        G[[k1, r]] = G[[r, k1]]
        swap_cols(k1, c)
        if G[k1, k1] == 3:
            G[k1] = (3 * G[k1]) % 4
        for i in range(m):
            if i != k1 and G[i, k1]:
                G[i] = (G[i] - G[i, k1] * G[k1]) % 4
        k1 += 1

    # rows below k1 are now zero on the first k1 columns and even elsewhere
    k2 = 0
    lower = k1
    while lower + k2 < m:
        row0 = lower + k2
        hit = None
        for c in range(row0, n):
            nz = np.nonzero(G[row0:, c])[0]
            if len(nz):
                hit = (row0 + int(nz[0]), c)
                break
        if hit is None:
            break
        r, c = hit
        G[[row0, r]] = G[[r, row0]]
        swap_cols(row0, c)
        for i in range(lower, m):
            if i != row0 and G[i, row0]:
                G[i] = (G[i] - G[row0]) % 4
        for i in range(k1):
            if G[i, row0] >= 2:
                G[i] = (G[i] - G[row0]) % 4
        k2 += 1

    k3 = n - k1 - k2
    top = G[:k1]
    bot = G[k1:k1 + k2]
    Bfull = top[:, k1 + k2:]
    return StandardForm(
        n=n, k1=k1, k2=k2,
        A=top[:, k1:k1 + k2].reshape(k1, k2).copy(),
        B1=(Bfull % 2).reshape(k1, k3),
        B2=(Bfull // 2).reshape(k1, k3),
        D=(bot[:, k1 + k2:] // 2).reshape(k2, k3),
        perm=tuple(perm),
    )


class Z4Code:
    """A Z4-linear code given by generators; immutable after construction."""

    def __init__(self, generators, n: int | None = None, name: str | None = None):
        G = np.asarray(generators, dtype=np.int64)
        if G.size == 0:
            if n is None and G.ndim == 2:
                n = G.shape[1]
            if n is None:
                raise ValueError("length required for an empty generator list")
            G = np.zeros((0, n), np.int64)
        if G.ndim == 1:
            G = G[None, :]
        if n is not None and G.shape[1] != n:
            raise ValueError(f"generators have {G.shape[1]} columns, expected {n}")
        self.generators = G % 4
        self.generators.setflags(write=False)
        self.n = self.generators.shape[1]
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "Z4Code"
        return f"<{label} n={self.n} k1={self.k1} k2={self.k2}>"

    @cached_property
    def standard(self) -> StandardForm:
        return standardize(self.generators)

    @property
    def k1(self) -> int:
        return self.standard.k1

    @property
    def k2(self) -> int:
        return self.standard.k2

    @property
    def size(self) -> int:
        return 4 ** self.k1 * 2 ** self.k2

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """Standard-form generators in the code's own coordinates."""
        return self.standard.original_matrix()

    @property
    def upper(self) -> np.ndarray:
        return self.generator_matrix[:self.k1]

    @property
    def lower(self) -> np.ndarray:
        return self.generator_matrix[self.k1:]

    def residue(self) -> BinaryCode:
        return BinaryCode(self.n, (from_bits(r % 2) for r in self.upper))

    def torsion(self) -> BinaryCode:
        rows = [from_bits(r % 2) for r in self.upper] + [from_bits(r // 2) for r in self.lower]
        return BinaryCode(self.n, rows)

    @cached_property
    def _dual_generators(self) -> np.ndarray:
        sf = self.standard
        k1, k2, k3 = sf.k1, sf.k2, sf.k3
        B = sf.B1 + 2 * sf.B2
        rows = []
        for l in range(k3):
            x2 = -sf.D[:, l]
            x1 = sf.A @ sf.D[:, l] - B[:, l]
            x3 = np.zeros(k3, np.int64)
            x3[l] = 1
            rows.append(np.concatenate([x1, x2, x3]))
        for j in range(k2):
            x2 = np.zeros(k2, np.int64)
            x2[j] = 2
            rows.append(np.concatenate([-2 * sf.A[:, j], x2, np.zeros(k3, np.int64)]))
        perm_rows = np.array(rows, dtype=np.int64).reshape(k2 + k3, self.n) % 4
        return sf.unpermute(perm_rows)

    def dual(self) -> Z4Code:
        return Z4Code(self._dual_generators, n=self.n)

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64) % 4
        return bool(np.all((self._dual_generators @ x) % 4 == 0))

    def contains_all(self, X) -> bool:
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.n) % 4
        return bool(np.all((X @ self._dual_generators.T) % 4 == 0))

    def same_span(self, other: Z4Code) -> bool:
        return self.n == other.n and self.size == other.size and other.contains_all(self.generators)

    def is_self_orthogonal(self) -> bool:
        G = self.generators
        return bool(np.all((G @ G.T) % 4 == 0))

    def is_self_dual(self) -> bool:
        return 2 * self.k1 + self.k2 == self.n and self.is_self_orthogonal()

    def classify_type(self) -> CodeType:
        """Type II iff self-dual and every standard generator has weight 0 mod 8.

        Sufficient because ``ew(x+y) = ew(x) + ew(y) + 2 x.y (mod 8)`` and the
        inner products vanish mod 4 on a self-dual code.
        """
        if not self.is_self_dual():
            return CodeType.NOT_SELF_DUAL
        if all(euclidean_weight(r) % 8 == 0 for r in self.generator_matrix):
            return CodeType.TYPE_II
        return CodeType.TYPE_I

    @property
    def type_tag(self) -> CodeType:
        return self.classify_type()

    def codewords(self) -> Iterator[np.ndarray]:
        """All codewords; coefficients (a in Z4^k1, b in F2^k2) in lexicographic order."""
        top, bottom = self.upper, self.lower
        for a in itertools.product(range(4), repeat=self.k1):
            base = np.asarray(a, np.int64) @ top if self.k1 else np.zeros(self.n, np.int64)
            for b in itertools.product(range(2), repeat=self.k2):
                extra = np.asarray(b, np.int64) @ bottom if self.k2 else 0
                yield (base + extra) % 4

    def codeword_array(self) -> np.ndarray:
        if self.n and self.size > 1 << 20:
            raise ValueError("code too large to materialize")
        return np.array(list(self.codewords()), dtype=np.int64).reshape(self.size, self.n)

    def permute(self, perm) -> Z4Code:
        """Code whose coordinate ``j`` is this code's coordinate ``perm[j]``."""
        return Z4Code(self.generators[:, list(perm)], name=self.name)

    def negate_coordinates(self, coords) -> Z4Code:
        G = self.generators.copy()
        G[:, list(coords)] *= 3
        return Z4Code(G, name=self.name)

    def binary_generators(self) -> np.ndarray:
        """``g`` and ``2g`` for each order-4 row, then the order-2 rows.

        Binary combinations of these reach every codeword exactly once.
        """
        rows = []
        for g in self.upper:
            rows.append(g)
            rows.append((2 * g) % 4)
        rows.extend(self.lower)
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.n)


def _orthogonality_defects(top: np.ndarray) -> list[tuple[int, int, int]]:
    ip = (top @ top.T) % 4
    return [(i, j, int(ip[i, j])) for i in range(len(top)) for j in range(i, len(top)) if ip[i, j]]


def complete_from_upper(n: int, M, name: str | None = None) -> Z4Code:
    """Self-dual code whose standard form has upper block ``(I_k1 | M)``.

    The order-2 rows are twice a basis of the vectors in the residue dual that
    vanish on the first ``k1`` coordinates; any column moves needed to make
    that block systematic are recorded in the code's standard form.
    """
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        M = M.reshape(0, n)
    k1 = M.shape[0]
    if M.shape[1] != n - k1:
        raise ShapeError(f"upper block is {M.shape[0]}x{M.shape[1]}, expected {k1}x{n - k1}")
    top = np.hstack([np.eye(k1, dtype=np.int64), M]) % 4
    bad = _orthogonality_defects(top)
    if bad:
        raise NonOrthogonalUpper(bad)
    residue = BinaryCode(n, (from_bits(r % 2) for r in top))
    head = (1 << k1) - 1
    reduced = []
    for y in residue.dual().rows:
        for i in range(k1):
            if (y >> i) & 1:
                y ^= from_bits(top[i] % 2)
        reduced.append(y)
    basis, _ = rref(reduced)
    if any(b & head for b in basis) or len(basis) != n - 2 * k1:
        raise ShapeError(f"residue dual leaves a {len(basis)}-dim torsion complement, expected {n - 2 * k1}")
    bottom = np.array([2 * to_bits(b, n) for b in basis], dtype=np.int64).reshape(len(basis), n)
    return Z4Code(np.vstack([top, bottom]), name=name)


def shorten_sub(C: Z4Code, coord: int = 0) -> Z4Code:
    """``sub(C)``: codewords with an even entry at ``coord``, that coordinate deleted."""
    if not 0 <= coord < C.n:
        raise IndexError(coord)
    G = C.generator_matrix
    odd = [i for i, g in enumerate(G) if g[coord] % 2]
    rows = []
    if odd:
        pivot = G[odd[0]]
        for i, g in enumerate(G):
            if i == odd[0]:
                rows.append(2 * g)
            elif g[coord] % 2:
                rows.append(g - pivot)
            else:
                rows.append(g)
    else:
        rows = list(G)
    kept = np.delete(np.array(rows, dtype=np.int64).reshape(len(rows), C.n) % 4, coord, axis=1)
    return Z4Code(kept, n=C.n - 1, name=f"sub({C.name})" if C.name else None)


def direct_sum(C1: Z4Code, C2: Z4Code) -> Z4Code:
    G1, G2 = C1.generator_matrix, C2.generator_matrix
    top = np.hstack([G1, np.zeros((len(G1), C2.n), np.int64)])
    bot = np.hstack([np.zeros((len(G2), C1.n), np.int64), G2])
    name = f"{C1.name}+{C2.name}" if C1.name and C2.name else None
    return Z4Code(np.vstack([top, bot]), n=C1.n + C2.n, name=name)


def twos_code(n: int = 1) -> Z4Code:
    """``{0,2}^n``, the direct sum of ``n`` copies of the length-1 self-dual code."""
    return Z4Code(2 * np.eye(n, dtype=np.int64), n=n, name="{0,2}" if n == 1 else f"{{0,2}}^{n}")
