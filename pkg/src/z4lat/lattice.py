"""Construction A lattices ``A4(C) = (1/2){x in Z^n : x mod 4 in C}``.

Lattice vectors are handled in doubled coordinates: the integer vector ``x``
stands for ``x/2``, whose norm is ``x.x / 4``.  Hot loops only ever see the
integer ``x.x``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import sympy

from z4lat import kernels
from z4lat.series import QuarterSeries, theta_z_class
from z4lat.weights import ResidueLayers
from z4lat.z4 import NotSelfDual, Z4Code

DEFAULT_FRAME_BUDGET = 10 ** 9


class NotUnimodular(ValueError):
    pass


def frame_budget() -> int:
    """Node budget for frame searches, overridable by ``Z4LAT_FRAME_BUDGET``."""
    raw = os.environ.get("Z4LAT_FRAME_BUDGET")
    return int(float(raw)) if raw else DEFAULT_FRAME_BUDGET


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """Basis rows ``M / 2``; ``M`` is an integer matrix.

    ``perm``, when present, orders the coordinates so that ``M`` becomes upper
    triangular (true for bases built from a standard form).
    """

    M: np.ndarray
    provenance: str | None = None
    perm: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self.M.shape[1]

    def doubled_gram(self) -> np.ndarray:
        """``M M^T``, i.e. four times the Gram matrix."""
        return self.M @ self.M.T

    def gram(self) -> np.ndarray:
        G4 = self.doubled_gram()
        bad = np.argwhere(G4 % 4)
        if len(bad):
            i, j = bad[0]
            raise NotUnimodular(f"Gram entry ({i},{j}) = {G4[i, j]}/4 is not an integer")
        return G4 // 4

    @cached_property
    def determinant(self) -> int:
        """Exact ``det(Gram)`` (fails with NotUnimodular if the Gram is not integral)."""
        return int(sympy.Matrix(self.gram().tolist()).det(method="bareiss"))

    def contains(self, x) -> bool:
        """Is ``x/2`` in the lattice?  ``x`` is given in doubled coordinates."""
        x = np.asarray(x, dtype=np.int64)
        if self.perm is not None:
            return self._triangular_solve(x) is not None
        u = self._inverse_doubled.T * sympy.Matrix(x.tolist())
        return all(v.is_integer for v in u)

    @cached_property
    def _inverse_doubled(self):
        return sympy.Matrix(self.M.tolist()).inv()

    def _triangular_solve(self, x: np.ndarray) -> np.ndarray | None:
        perm = list(self.perm)
        T = self.M[:, perm]
        rest = x[perm].copy()
        u = np.zeros(self.n, np.int64)
        for i in range(self.n):
            d = T[i, i]
            if rest[i] % d:
                return None
            u[i] = rest[i] // d
            rest -= u[i] * T[i]
        return u if not rest.any() else None

    def to_lines(self) -> list[str]:
        return [str(self.n)] + [" ".join(str(int(v)) for v in row) for row in self.M]


def construction_a(C: Z4Code) -> LatticeBasis:
    """Basis of ``A4(C)``: lifted order-4 rows, order-2 rows, and ``4 e_j`` on the last block."""
    if not C.is_self_dual():
        raise NotSelfDual(f"{C!r} is not self-dual")
    sf = C.standard
    n = C.n
    rows = [np.asarray(g, np.int64) for g in C.generator_matrix]
    for p in range(sf.k1 + sf.k2, n):
        e = np.zeros(n, np.int64)
        e[sf.perm[p]] = 4
        rows.append(e)
    M = np.array(rows, dtype=np.int64).reshape(n, n)
    return LatticeBasis(M, provenance=C.name, perm=sf.perm)


def verify_unimodular(L: LatticeBasis) -> str:
    """Return ``"odd"`` or ``"even"``; raise NotUnimodular otherwise."""
    G = L.gram()
    det = L.determinant
    if abs(det) != 1:
        raise NotUnimodular(f"det(Gram) = {det}")
    # norm(u) = sum u_i^2 G_ii (mod 2), so parity is read off the diagonal
    return "odd" if np.any(np.diag(G) % 2) else "even"


# ---------------------------------------------------------------------------
# counting lattice vectors from codewords


@lru_cache(maxsize=None)
def _coordinate_squares(residue: int, budget: int) -> tuple[int, ...]:
    """``counts[s]`` = number of integers ``x = residue (mod 4)`` with ``x^2 = s``."""
    counts = [0] * (budget + 1)
    m = 0
    while m * m <= budget:
        for x in {m, -m}:
            if x % 4 == residue:
                counts[x * x] += 1
        m += 1
    return tuple(counts)


def _truncated_product(a: tuple[int, ...], b: tuple[int, ...], budget: int) -> tuple[int, ...]:
    out = [0] * (budget + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(budget + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return tuple(out)


@lru_cache(maxsize=None)
def _power(residue: int, e: int, budget: int) -> tuple[int, ...]:
    if e == 0:
        return (1,) + (0,) * budget
    half = _power(residue, e // 2, budget)
    sq = _truncated_product(half, half, budget)
    return _truncated_product(sq, _coordinate_squares(residue, budget), budget) if e % 2 else sq


def lift_counts(zeros: int, units: int, twos: int, budget: int) -> tuple[int, ...]:
    """Integer lifts of one codeword of composition ``(zeros, units, twos)``.

    Entry ``s`` counts ``x`` with ``x mod 4`` equal to the codeword and
    ``x.x = s``, for ``0 <= s <= budget``.  Coordinates 1 and 3 have the same
    square multiset, so the composition determines the answer.
    """
    out = _power(0, zeros, budget)
    out = _truncated_product(out, _power(1, units, budget), budget)
    return _truncated_product(out, _power(2, twos, budget), budget)


def vector_counts(C: Z4Code, max_norm: int, layers: ResidueLayers | None = None) -> list[int]:
    """``[N_0, ..., N_max_norm]`` for ``A4(C)`` by lifting low-weight codewords."""
    budget = 4 * max_norm
    layers = layers or ResidueLayers(C)
    by_square = [0] * (budget + 1)
    for (i, j, k), c in layers.swe(budget).terms.items():
        for s, cnt in enumerate(lift_counts(i, j, k, budget)):
            by_square[s] += c * cnt
    if any(by_square[s] for s in range(budget + 1) if s % 4):
        raise NotUnimodular("vectors of non-integral norm found")
    return by_square[::4]


def min_norm_and_kissing(C: Z4Code) -> tuple[int, int]:
    """Minimum norm and kissing number of ``A4(C)``.

    ``2 e_i`` always has norm 4, so norms through 4 decide both numbers.
    """
    if not C.is_self_dual():
        raise NotSelfDual(f"{C!r} is not self-dual")
    counts = vector_counts(C, 4)
    mu = next(m for m in range(1, 5) if counts[m])
    return mu, counts[mu]


def theta_prefix(C: Z4Code, max_norm: int) -> QuarterSeries:
    """Theta series of ``A4(C)`` through ``q^max_norm``, by substituting the coordinate
    thetas into the truncated symmetrized weight enumerator."""
    if max_norm < 1:
        raise ValueError("max_norm must be at least 1")
    if not C.is_self_dual():
        raise NotSelfDual(f"{C!r} is not self-dual")
    order = 4 * max_norm + 1
    enumerator = ResidueLayers(C).swe(4 * max_norm)
    pieces = {r: theta_z_class(r, order) for r in (0, 1, 2)}
    cache: dict[tuple[int, int], QuarterSeries] = {}

    def power(r: int, e: int) -> QuarterSeries:
        if (r, e) not in cache:
            cache[(r, e)] = pieces[r] ** e
        return cache[(r, e)]

    total = QuarterSeries.zero(order)
    for (i, j, k), c in sorted(enumerator.terms.items()):
        total = total + (power(0, i) * power(1, j) * power(2, k)).truncate(order) * c
    return total


# ---------------------------------------------------------------------------
# independent enumeration over a basis


def lll_reduce(M, delta: float = 0.99) -> np.ndarray:
    """LLL-reduce the rows of an integer matrix (exact basis, float Gram-Schmidt)."""
    B = np.array(M, dtype=np.int64)
    n = len(B)

    def gso(B):
        Bf = B.astype(np.float64)
        star = np.zeros_like(Bf)
        mu = np.zeros((n, n))
        norms = np.zeros(n)
        for i in range(n):
            v = Bf[i].copy()
            for j in range(i):
                mu[i, j] = Bf[i] @ star[j] / norms[j]
                v -= mu[i, j] * star[j]
            star[i] = v
            norms[i] = v @ v
        return mu, norms

    mu, norms = gso(B)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k, j]))
            if q:
                B[k] -= q * B[j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
        if norms[k] >= (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[[k - 1, k]] = B[[k, k - 1]]
            mu, norms = gso(B)
            k = max(k - 1, 1)
    return B


def _gso(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    G = (B @ B.T).astype(np.float64)
    n = len(B)
    mu = np.zeros((n, n))
    r = np.zeros(n)
    for i in range(n):
        for j in range(i):
            mu[i, j] = (G[i, j] - sum(mu[j, l] * mu[i, l] * r[l] for l in range(j))) / r[j]
        r[i] = G[i, i] - sum(mu[i, l] ** 2 * r[l] for l in range(i))
    return mu, r


def enumerate_short_vectors(L: LatticeBasis, max_norm: int, *, backend: str | None = None):
    """All nonzero lattice vectors of norm ``<= max_norm`` (doubled coordinates).

    Fincke-Pohst over an LLL-reduced basis; float bounds only prune, the exact
    integer norm decides membership.  Returns ``(vectors, nodes)``.
    """
    B = lll_reduce(L.M)
    mu, r = _gso(B)
    return kernels.short_vectors(B, mu, r, 4 * max_norm, backend=backend)


def short_vector_counts(L: LatticeBasis, max_norm: int, *, backend: str | None = None) -> list[int]:
    vecs, _ = enumerate_short_vectors(L, max_norm, backend=backend)
    counts = [0] * (max_norm + 1)
    counts[0] = 1
    for s in (vecs * vecs).sum(axis=1):
        if s % 4:
            raise NotUnimodular(f"vector of norm {s}/4")
        counts[s // 4] += 1
    return counts


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class FrameResult:
    status: str  # "found" | "none" | "budget_exhausted"
    k: int
    frame: np.ndarray | None
    nodes: int
    candidates: int


def standard_frame_check(L: LatticeBasis) -> bool:
    """The ``2n`` vectors ``+-2 e_i`` lie in the lattice and form a 4-frame."""
    F = 4 * np.eye(L.n, dtype=np.int64)
    if not np.array_equal(F @ F.T, 16 * np.eye(L.n, dtype=np.int64)):
        return False
    return all(L.contains(f) and L.contains(-f) for f in F)


def _one_per_pair(vecs: np.ndarray) -> np.ndarray:
    if len(vecs) == 0:
        return vecs
    first = vecs[np.arange(len(vecs)), np.argmax(vecs != 0, axis=1)]
    reps = vecs[first > 0]
    support = np.packbits(reps != 0, axis=1, bitorder="little")
    keys = [reps[:, c] for c in range(reps.shape[1] - 1, -1, -1)]
    keys += [support[:, c] for c in range(support.shape[1] - 1, -1, -1)]
    return reps[np.lexsort(keys)]


def find_k_frame(L: LatticeBasis, k: int, budget: int | None = None, *,
                 backend: str | None = None) -> FrameResult:
    """Search for ``n`` pairwise orthogonal lattice vectors of norm ``k``.

    Candidates are all norm-``k`` vectors (one per sign pair) from the short
    vector enumeration, ordered by support.  ``budget`` caps search nodes.
    """
    budget = frame_budget() if budget is None else budget
    vecs, _ = enumerate_short_vectors(L, k, backend=backend)
    vecs = vecs[(vecs * vecs).sum(axis=1) == 4 * k]
    reps = _one_per_pair(vecs)
    status, idx, nodes = kernels.frame_search(reps, L.n, budget, backend=backend)
    label = {1: "found", 0: "none", -1: "budget_exhausted"}[int(status)]
    frame = reps[idx] if label == "found" else None
    return FrameResult(label, k, frame, int(nodes), len(reps))


def ternary_frame_obstruction(n: int, min_norm: int, kissing: int) -> str | None:
    """Reason why an ``n``-dim unimodular lattice with the given minimum norm and
    kissing number cannot contain a 3-frame, or None if no obstruction is found.

    A 3-frame spans ``M = sqrt(3) Z^n`` with ``M <= L <= M/3``, so ``L/M`` is a
    self-dual ternary code ``D``.  Such codes need ``4 | n``.  With minimum
    norm 3, ``D`` has no words of weight 3 or 6, and the norm-3 vectors are the
    ``2n`` frame vectors plus one per weight-9 word.  When the Gleason
    polynomial is pinned down by ``A_0 = 1, A_3 = A_6 = 0`` this fixes the
    kissing number.
    """
    if n % 4:
        return f"no self-dual ternary code has length {n}"
    if min_norm != 3:
        return None
    x, y = sympy.symbols("x y")
    g4 = x ** 4 + 8 * x * y ** 3
    g12 = y ** 3 * (x ** 3 - y ** 3) ** 3
    free = sympy.symbols(f"c0:{n // 12 + 1}")
    W = sympy.Poly(sympy.expand(sum(c * g4 ** (n // 4 - 3 * j) * g12 ** j
                                    for j, c in enumerate(free)).subs(x, 1)), y)
    eqs = [W.coeff_monomial(1) - 1, W.coeff_monomial(y ** 3), W.coeff_monomial(y ** 6)]
    sol = sympy.solve(eqs, free, dict=True)
    if len(sol) != 1 or len(sol[0]) != len(free):
        return None
    a9 = int(W.coeff_monomial(y ** 9).subs(sol[0]))
    if 2 * n + a9 != kissing:
        return f"a 3-frame forces kissing number {2 * n} + {a9} = {2 * n + a9}, not {kissing}"
    return None


@dataclass(frozen=True)
class LatticeReport:
    min_norm: int
    kissing: int
    theta_prefix: QuarterSeries
    parity: str


def lattice_report(C: Z4Code, max_norm: int | None = None) -> LatticeReport:
    """Minimum norm, kissing number, theta prefix (through ``max_norm``, default
    the minimum norm) and parity of ``A4(C)``."""
    mu, N = min_norm_and_kissing(C)
    theta = theta_prefix(C, max(max_norm or mu, 1))
    return LatticeReport(mu, N, theta, verify_unimodular(construction_a(C)))
