"""Weights of Z4 codewords, minimum-weight search, symmetrized weight enumerators, bounds.

Codewords of a self-dual code are grouped by residue word ``r``: if ``c0``
is one lift of ``r`` then the codewords above ``r`` are ``c0 + 2t`` for ``t``
in the torsion code.  Off ``supp(r)`` such a word is ``2 (h + t)`` with
``h = c0 / 2``, so its composition is ``wt(r)`` units plus the weight of
``h + t`` outside ``supp(r)`` twos.  Counting those is a coset problem in the
torsion code projected away from ``supp(r)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from z4lat import kernels, tables
from z4lat.gf2 import BudgetExceeded, from_bits, popcount
from z4lat.z4 import NotSelfDual, Z4Code

#: uncapped enumerators enumerate all 2^n codewords; refuse beyond this
FULL_SWE_MAX_N = 30
#: coset pattern enumeration per residue word is refused above this many patterns
PATTERN_BUDGET = 5_000_000


class TooLarge(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class Undetermined(ValueError):
    pass


@dataclass(frozen=True, order=True)
class WeightTriple:
    euclidean: int
    lee: int
    hamming: int

    def __str__(self) -> str:
        return f"{self.euclidean}/{self.lee}/{self.hamming}"


def weights(x) -> WeightTriple:
    """Euclidean ``n1+4n2+n3``, Lee ``n1+2n2+n3``, Hamming weight of a Z4 vector."""
    x = np.asarray(x, dtype=np.int64) % 4
    units = int(np.count_nonzero(x % 2))
    twos = int(np.count_nonzero(x == 2))
    return WeightTriple(units + 4 * twos, units + 2 * twos, units + twos)


def _require_self_dual(C: Z4Code) -> None:
    if not C.is_self_dual():
        raise NotSelfDual(f"{C!r} is not self-dual")


# ---------------------------------------------------------------------------
# symmetrized weight enumerator


@dataclass
class SWE:
    """Counts of codewords by ``(#0, #(+-1), #2)``, monomial ``a^i b^j c^k``.

    With ``cap`` set, only monomials of Euclidean weight ``j + 4k <= cap`` are
    present and those are complete.
    """

    n: int
    terms: dict[tuple[int, int, int], int] = field(default_factory=dict)
    cap: int | None = None

    @classmethod
    def from_histogram(cls, hist: np.ndarray, n: int) -> SWE:
        terms = {(n - p - t, p, t): int(hist[p, t]) for p, t in zip(*np.nonzero(hist))}
        return cls(n, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SWE):
            return NotImplemented
        return self.n == other.n and self.cap == other.cap and self.terms == other.terms

    def coefficient(self, i: int, j: int, k: int) -> int:
        if self.cap is not None and j + 4 * k > self.cap:
            raise OutOfRange(f"monomial a^{i} b^{j} c^{k} lies above the cap {self.cap}")
        return self.terms.get((i, j, k), 0)

    def total(self) -> int:
        return sum(self.terms.values())

    def truncate(self, cap: int) -> SWE:
        if self.cap is not None and cap > self.cap:
            raise OutOfRange("cannot raise the cap of a truncated enumerator")
        return SWE(self.n, {m: c for m, c in self.terms.items() if m[1] + 4 * m[2] <= cap}, cap)

    def euclidean_distribution(self) -> dict[int, int]:
        out: Counter[int] = Counter()
        for (_, j, k), c in self.terms.items():
            out[j + 4 * k] += c
        return dict(sorted(out.items()))

    def min_weights(self) -> WeightTriple:
        """Minimum Euclidean, Lee, Hamming weight over nonzero codewords."""
        nonzero = [(j, k) for (_, j, k), c in self.terms.items() if c and (j or k)]
        if not nonzero:
            raise ValueError("no nonzero codewords recorded")
        return WeightTriple(min(j + 4 * k for j, k in nonzero),
                            min(j + 2 * k for j, k in nonzero),
                            min(j + k for j, k in nonzero))

    def to_lines(self) -> list[str]:
        return [f"{i} {j} {k} {c}" for (i, j, k), c in sorted(self.terms.items())]

    @classmethod
    def from_lines(cls, lines: Iterable[str], n: int | None = None, cap: int | None = None) -> SWE:
        terms = {}
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            i, j, k, c = (int(tok) for tok in line.split())
            terms[(i, j, k)] = c
            if n is None:
                n = i + j + k
        if n is None:
            raise ValueError("empty enumerator needs an explicit length")
        return cls(n, terms, cap)

    def to_poly_string(self) -> str:
        """Readable polynomial, ordered like the published listing."""
        parts = []
        for (i, j, k), c in sorted(self.terms.items(), key=lambda t: (-t[0][0], -t[0][1])):
            if not c:
                continue
            mono = " ".join(f"{v}^{e}" if e > 1 else v for v, e in (("a", i), ("b", j), ("c", k)) if e)
            parts.append(mono if c == 1 else f"{c} {mono}")
        body = " + ".join(parts)
        return body if self.cap is None else f"{body} + (terms of Euclidean weight > {self.cap})"


def full_swe(C: Z4Code, *, backend: str | None = None) -> SWE:
    """Uncapped enumerator by Gray-code enumeration of all ``2^n`` codewords."""
    _require_self_dual(C)
    if C.n > FULL_SWE_MAX_N:
        raise TooLarge(f"full enumeration of 2^{C.n} codewords refused (limit n <= {FULL_SWE_MAX_N})")
    lo, hi = kernels.pack_z4(C.binary_generators())
    if len(lo) == 0:
        return SWE(C.n, {(C.n, 0, 0): 1})
    return SWE.from_histogram(kernels.z4_composition_histogram(lo, hi, C.n, backend=backend), C.n)


class ResidueLayers:
    """Codewords of a self-dual code, layered by residue word."""

    def __init__(self, C: Z4Code):
        _require_self_dual(C)
        self.code = C
        self.n = C.n
        self.full = (1 << C.n) - 1
        self.torsion = C.torsion()
        top = C.upper
        k1 = len(top)
        msgs = (np.arange(1 << k1)[:, None] >> np.arange(k1)) & 1
        lifts = (msgs @ top) % 4 if k1 else np.zeros((1, C.n), np.int64)
        self.residues = [from_bits(row % 2) for row in lifts]
        self.halves = [from_bits(row >> 1) for row in lifts]
        self.weights = [popcount(r) for r in self.residues]
        self.order = sorted(range(1, len(self.residues)), key=lambda i: (self.weights[i], i))
        self._projections: dict[int, object] = {}

    def _projection(self, idx: int):
        proj = self._projections.get(idx)
        if proj is None:
            proj = self.torsion.projection(self.full & ~self.residues[idx])
            self._projections[idx] = proj
        return proj

    def twos_counts(self, idx: int, w_max: int, stop_at_first: bool = False) -> dict[int, int]:
        """``{w: #codewords above residue idx with w twos}`` for ``w <= w_max``."""
        out: dict[int, int] = {}
        if w_max < 0:
            return out
        if idx == 0:
            for t in self.torsion.low_weight_words(w_max):
                w = popcount(t)
                out[w] = out.get(w, 0) + 1
                if stop_at_first and w > 0:
                    break
            return out
        r, h = self.residues[idx], self.halves[idx]
        comp = [j for j in range(self.n) if not (r >> j) & 1]
        if sum(math.comb(len(comp), w) for w in range(w_max + 1)) > PATTERN_BUDGET:
            raise BudgetExceeded(f"coset scan of {len(comp)} coordinates to weight {w_max}")
        proj = self._projection(idx)
        for w in range(w_max + 1):
            total = 0
            for support in itertools.combinations(comp, w):
                v = 0
                for j in support:
                    v |= 1 << j
                total += proj.count(h ^ v)
            if total:
                out[w] = total
                if stop_at_first:
                    break
        return out

    def swe(self, cap: int) -> SWE:
        terms: Counter[tuple[int, int, int]] = Counter()
        n = self.n
        for w, c in self.twos_counts(0, cap // 4).items():
            terms[(n - w, 0, w)] += c
        for idx in self.order:
            wr = self.weights[idx]
            if wr > cap:
                break
            for w, c in self.twos_counts(idx, (cap - wr) // 4).items():
                terms[(n - wr - w, wr, w)] += c
        return SWE(n, dict(terms), cap)

    def min_weights(self) -> WeightTriple:
        dt = self.torsion.min_weight()
        E, L, H = 4 * dt, 2 * dt, dt
        for idx in self.order:
            wr = self.weights[idx]
            cap = max((E - wr - 1) // 4, (L - wr - 1) // 2, H - wr - 1)
            if cap < 0:
                break
            counts = self.twos_counts(idx, cap, stop_at_first=True)
            if counts:
                w = min(counts)
                E, L, H = min(E, wr + 4 * w), min(L, wr + 2 * w), min(H, wr + w)
        return WeightTriple(E, L, H)


def swe(C: Z4Code, cap: int | None = None, *, backend: str | None = None) -> SWE:
    """Symmetrized weight enumerator, complete up to Euclidean weight ``cap``."""
    if cap is None:
        return full_swe(C, backend=backend)
    return ResidueLayers(C).swe(cap)


def min_weights(C: Z4Code) -> WeightTriple:
    """Exact minimum Euclidean, Lee and Hamming weights by the layered search."""
    return ResidueLayers(C).min_weights()


def min_weights_full(C: Z4Code, *, backend: str | None = None) -> WeightTriple:
    """Same answer from a full ``2^n`` enumeration (the cross-check route)."""
    return full_swe(C, backend=backend).min_weights()


def euclidean_minimum(C: Z4Code) -> tuple[int, int]:
    """``(d_E, number of codewords of weight d_E)``."""
    layers = ResidueLayers(C)
    d = layers.min_weights().euclidean
    return d, layers.swe(d).euclidean_distribution().get(d, 0)


# ---------------------------------------------------------------------------
# bounds and the table of largest minimum weights


def typeII_upper_bound(n: int) -> int:
    return 8 * (n // 24) + 8


def typeI_upper_bound(n: int) -> int:
    return 8 * (n // 24) + (12 if n % 24 == 23 else 8)


def mu_max_odd(n: int) -> tuple[int, ...]:
    """Largest minimum norm of odd unimodular lattices, as tabulated (25..47)."""
    values = tables.load()["mu_max_odd"]["values"]
    if str(n) not in values:
        raise OutOfRange(f"no tabulated minimum norm for n={n}")
    return tuple(values[str(n)])


def lattice_bound(n: int) -> int:
    """Upper bound on d_E for Type I length ``n`` implied through Construction A.

    ``A4(C)`` has minimum norm ``min(4, d_E/4)``; when even the best odd
    unimodular lattice has minimum below 4 this caps ``d_E`` at four times
    that minimum.  Otherwise the Type I bound stands.
    """
    best = max(mu_max_odd(n))
    general = typeI_upper_bound(n)
    return min(general, 4 * best) if best < 4 else general


def dmax_upper_bound(n: int) -> int:
    """Tabulated upper bound on d_max,E for Type I codes, 25 <= n <= 47."""
    values = tables.load()["d_max_bound"]["values"]
    if str(n) not in values:
        raise OutOfRange(f"the bound table covers 25 <= n <= 47, got {n}")
    return values[str(n)]


def dmaxE_table(n: int) -> int | tuple[int, int]:
    """Largest minimum Euclidean weight of Type I codes, or an interval where open."""
    if not 25 <= n <= 47:
        raise OutOfRange(f"d_max,E is tabulated for 25 <= n <= 47, got {n}")
    row = tables.table1_row(n)
    if "interval" in row:
        return tuple(row["interval"])
    return row["value"]


def is_optimal(C: Z4Code, d_E: int | None = None) -> bool:
    try:
        best = dmaxE_table(C.n)
    except OutOfRange as exc:
        raise Undetermined(str(exc)) from exc
    if isinstance(best, tuple):
        raise Undetermined(f"d_max,E({C.n}) is only known to lie in {best}")
    if d_E is None:
        d_E = min_weights(C).euclidean
    return d_E == best
