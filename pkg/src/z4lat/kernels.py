"""Enumeration kernels.

Every public function here picks a backend: ``"numba"`` (jitted loops) or
``"numpy"`` (vectorized, no compilation).  The default follows
:data:`z4lat._accel.USE_NUMBA`; pass ``backend=`` to force one, which is what
the benchmark and the cross-backend tests do.

Vectors of length ``n <= 64`` are packed into ``uint64`` words.  A Z4 vector
is bit-sliced into a pair ``(lo, hi)`` with ``x = lo + 2*hi`` coordinatewise.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from z4lat._accel import USE_NUMBA, njit, prange

_U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def _resolve(backend: str | None) -> str:
    if backend is None:
        return "numba" if USE_NUMBA else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def pack_bits(rows) -> np.ndarray:
    """Pack 0/1 rows (k x n, n <= 64) into uint64 words, bit j = column j."""
    rows = np.asarray(rows, dtype=np.uint64)
    if rows.ndim == 1:
        rows = rows[None, :]
    n = rows.shape[1]
    if n > 64:
        raise ValueError("packed kernels support n <= 64")
    weights = _U1 << np.arange(n, dtype=np.uint64)
    return (rows * weights).sum(axis=1, dtype=np.uint64) if n else np.zeros(len(rows), np.uint64)


def pack_z4(rows) -> tuple[np.ndarray, np.ndarray]:
    rows = np.asarray(rows, dtype=np.int64) % 4
    return pack_bits(rows & 1), pack_bits(rows >> 1)


@njit(inline="always")
def _popcount(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(inline="always")
def _ctz(t):
    j = 0
    while not (t >> j) & 1:
        j += 1
    return j


# ---------------------------------------------------------------------------
# Z4 composition histogram over the full span of binary-combination generators


@njit(parallel=True)
def _nb_z4_histogram(lo, hi, n, low_bits):
    m = lo.shape[0]
    high = m - low_bits
    nchunks = 1 << high
    neg_hi = hi ^ lo
    hist = np.zeros((nchunks, n + 1, n + 1), np.int64)
    for c in prange(nchunks):
        blo = np.uint64(0)
        bhi = np.uint64(0)
        for i in range(high):
            if (c >> i) & 1:
                g_lo = lo[low_bits + i]
                carry = blo & g_lo
                blo = blo ^ g_lo
                bhi = bhi ^ hi[low_bits + i] ^ carry
        hist[c, _popcount(blo), _popcount(bhi & ~blo)] += 1
        for t in range(1, 1 << low_bits):
            j = _ctz(t)
            g_lo = lo[j]
            if ((t ^ (t >> 1)) >> j) & 1:
                g_hi = hi[j]
            else:
                g_hi = neg_hi[j]
            carry = blo & g_lo
            blo = blo ^ g_lo
            bhi = bhi ^ g_hi ^ carry
            hist[c, _popcount(blo), _popcount(bhi & ~blo)] += 1
    out = np.zeros((n + 1, n + 1), np.int64)
    for c in range(nchunks):
        out += hist[c]
    return out


def _np_z4_add(alo, ahi, blo, bhi):
    return alo ^ blo, ahi ^ bhi ^ (alo & blo)


def _np_z4_histogram(lo, hi, n, low_bits):
    tlo = np.zeros(1, np.uint64)
    thi = np.zeros(1, np.uint64)
    for i in range(low_bits):
        nlo, nhi = _np_z4_add(tlo, thi, lo[i], hi[i])
        tlo = np.concatenate([tlo, nlo])
        thi = np.concatenate([thi, nhi])
    out = np.zeros((n + 1) * (n + 1), np.int64)
    rest = list(zip(lo[low_bits:], hi[low_bits:]))
    for mask in range(1 << len(rest)):
        blo, bhi = np.uint64(0), np.uint64(0)
        for i, (g_lo, g_hi) in enumerate(rest):
            if (mask >> i) & 1:
                blo, bhi = blo ^ g_lo, bhi ^ g_hi ^ (blo & g_lo)
        clo, chi = _np_z4_add(tlo, thi, blo, bhi)
        pm = np.bitwise_count(clo).astype(np.int64)
        twos = np.bitwise_count(chi & ~clo).astype(np.int64)
        out += np.bincount(pm * (n + 1) + twos, minlength=out.size)
    return out.reshape(n + 1, n + 1)


def z4_composition_histogram(lo, hi, n: int, *, backend: str | None = None) -> np.ndarray:
    """Histogram of all Z4 combinations ``sum b_i g_i`` with ``b`` in {0,1}^m.

    ``(lo, hi)`` are the bit-sliced generators.  Entry ``[p, t]`` counts the
    vectors with ``p`` coordinates in {1,3} and ``t`` coordinates equal to 2.
    For a self-dual code pass ``g`` and ``2g`` for each order-4 row and the
    order-2 rows once; then every codeword appears exactly once.
    """
    lo = np.ascontiguousarray(lo, dtype=np.uint64)
    hi = np.ascontiguousarray(hi, dtype=np.uint64)
    m = lo.shape[0]
    if _resolve(backend) == "numba":
        return _nb_z4_histogram(lo, hi, n, max(m - 8, 0))
    return _np_z4_histogram(lo, hi, n, min(m, 16))


# ---------------------------------------------------------------------------
# binary weight distribution by Gray code


@njit(parallel=True)
def _nb_weight_distribution(gens, n, low_bits):
    m = gens.shape[0]
    high = m - low_bits
    nchunks = 1 << high
    hist = np.zeros((nchunks, n + 1), np.int64)
    for c in prange(nchunks):
        x = np.uint64(0)
        for i in range(high):
            if (c >> i) & 1:
                x ^= gens[low_bits + i]
        hist[c, _popcount(x)] += 1
        for t in range(1, 1 << low_bits):
            x ^= gens[_ctz(t)]
            hist[c, _popcount(x)] += 1
    out = np.zeros(n + 1, np.int64)
    for c in range(nchunks):
        out += hist[c]
    return out


def _np_weight_distribution(gens, n, low_bits):
    table = np.zeros(1, np.uint64)
    for i in range(low_bits):
        table = np.concatenate([table, table ^ gens[i]])
    out = np.zeros(n + 1, np.int64)
    rest = gens[low_bits:]
    for mask in range(1 << len(rest)):
        base = np.uint64(0)
        for i, g in enumerate(rest):
            if (mask >> i) & 1:
                base ^= g
        out += np.bincount(np.bitwise_count(table ^ base), minlength=n + 1)
    return out


def weight_distribution(gens, n: int, *, backend: str | None = None) -> np.ndarray:
    """Hamming weight distribution of the binary span of ``gens`` (packed rows)."""
    gens = np.ascontiguousarray(gens, dtype=np.uint64)
    m = gens.shape[0]
    if _resolve(backend) == "numba":
        return _nb_weight_distribution(gens, n, max(m - 8, 0))
    return _np_weight_distribution(gens, n, min(m, 16))


# ---------------------------------------------------------------------------
# low-weight vectors with zero syndrome


@njit
def _nb_syndrome_scan(cols, n, w_min, w_max, limit):
    out = np.empty(64, np.uint64)
    count = 0
    idx = np.empty(max(w_max, 1), np.int64)
    for w in range(w_min, w_max + 1):
        if w == 0:
            out[count] = np.uint64(0)
            count += 1
            continue
        if w > n:
            break
        for i in range(w):
            idx[i] = i
        while True:
            s = np.uint64(0)
            for i in range(w):
                s ^= cols[idx[i]]
            if s == 0:
                if count == out.shape[0]:
                    grown = np.empty(2 * count, np.uint64)
                    grown[:count] = out
                    out = grown
                sup = np.uint64(0)
                for i in range(w):
                    sup |= _U1 << np.uint64(idx[i])
                out[count] = sup
                count += 1
                if limit > 0 and count >= limit:
                    return out[:count]
            i = w - 1
            while i >= 0 and idx[i] == n - w + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, w):
                idx[j] = idx[j - 1] + 1
    return out[:count]


def _np_syndrome_scan(cols, n, w_min, w_max, limit, chunk=1 << 18):
    found = []
    total = 0
    for w in range(w_min, w_max + 1):
        if w == 0:
            found.append(np.zeros(1, np.uint64))
            total += 1
            continue
        it = itertools.combinations(range(n), w)
        while True:
            block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, chunk)), np.int64)
            if block.size == 0:
                break
            block = block.reshape(-1, w)
            syn = np.bitwise_xor.reduce(cols[block], axis=1)
            hits = block[syn == 0]
            if len(hits):
                sup = np.bitwise_or.reduce(_U1 << hits.astype(np.uint64), axis=1)
                found.append(sup)
                total += len(sup)
                if limit and total >= limit:
                    return np.concatenate(found)[:limit]
    return np.concatenate(found) if found else np.zeros(0, np.uint64)


def syndrome_scan(cols, n: int, w_max: int, *, w_min: int = 0, limit: int = 0,
                  backend: str | None = None) -> np.ndarray:
    """Supports (packed) of all vectors of weight in [w_min, w_max] with zero syndrome.

    ``cols[j]`` is the packed syndrome of the unit vector ``e_j``.  Results come
    in ascending weight, lexicographic within a weight.  ``limit > 0`` stops
    after that many hits.
    """
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    if _resolve(backend) == "numba":
        return _nb_syndrome_scan(cols, n, w_min, w_max, limit)
    return _np_syndrome_scan(cols, n, w_min, w_max, limit)


def scan_size(n: int, w_max: int) -> int:
    return sum(math.comb(n, w) for w in range(w_max + 1))


# ---------------------------------------------------------------------------
# Fincke-Pohst short vector enumeration


@njit
def _fp_enumerate(basis, mu, rdiag, bound, slack):
    """All nonzero ``x = u @ basis`` with ``x.x <= bound``; returns (vectors, nodes).

    ``mu``/``rdiag`` are the Gram-Schmidt data of the rows of ``basis``.  The
    float radius is widened by ``slack``; the exact integer norm decides.
    """
    n, dim = basis.shape
    u = np.zeros(n, np.int64)
    upper = np.zeros(n, np.int64)
    partial = np.zeros(n + 1)
    centers = np.zeros(n)
    out = np.empty((64, dim), np.int64)
    count = 0
    nodes = 0
    radius = bound + slack
    # start at the top level
    i = n - 1
    centers[i] = 0.0
    span = math.sqrt(radius / rdiag[i])
    u[i] = math.ceil(centers[i] - span)
    upper[i] = math.floor(centers[i] + span)
    while True:
        if u[i] > upper[i]:
            i += 1
            if i >= n:
                break
            u[i] += 1
            continue
        nodes += 1
        d = u[i] - centers[i]
        partial[i] = partial[i + 1] + rdiag[i] * d * d
        if partial[i] > radius:
            u[i] += 1
            continue
        if i == 0:
            x = np.zeros(dim, np.int64)
            nonzero = False
            for r in range(n):
                if u[r] != 0:
                    nonzero = True
                    for c in range(dim):
                        x[c] += u[r] * basis[r, c]
            if nonzero:
                norm = 0
                for c in range(dim):
                    norm += x[c] * x[c]
                if norm <= bound:
                    if count == out.shape[0]:
                        grown = np.empty((2 * count, dim), np.int64)
                        grown[:count] = out
                        out = grown
                    out[count] = x
                    count += 1
            u[i] += 1
            continue
        i -= 1
        c = 0.0
        for j in range(i + 1, n):
            c -= mu[j, i] * u[j]
        centers[i] = c
        span = math.sqrt(max(radius - partial[i + 1], 0.0) / rdiag[i])
        u[i] = math.ceil(c - span)
        upper[i] = math.floor(c + span)
    return out[:count], nodes


def short_vectors(basis, mu, rdiag, bound: int, *, backend: str | None = None):
    """Run the enumeration jitted or interpreted (there is no vectorized variant)."""
    args = (np.ascontiguousarray(basis, np.int64), np.ascontiguousarray(mu, np.float64),
            np.ascontiguousarray(rdiag, np.float64), int(bound), 1e-6 * max(bound, 1))
    if _resolve(backend) == "numba":
        return _fp_enumerate(*args)
    return _fp_enumerate.py_func(*args)


# ---------------------------------------------------------------------------
# frame search (exact cover of coordinate budgets by pairwise-orthogonal vectors)


@njit
def _frame_search(vecs, adj, colmask, over, target, budget):
    """Depth-first search for ``target`` pairwise-orthogonal rows of ``vecs``.

    A frame ``F`` with ``F F^T = k I`` also satisfies ``F^T F = k I``, so each
    coordinate's squared entries must sum to exactly the common row length.
    Candidates that would overflow a coordinate are dropped as soon as its
    budget shrinks (``over[c, s]`` holds the rows with ``x_c^2 > s``), and the
    search branches on the unfilled coordinate with the fewest live candidates.

    Returns (status, chosen, nodes): status 1 = found, 0 = none, -1 = budget.
    """
    nvec, dim = vecs.shape
    words = adj.shape[1]
    col_target = 0
    for c in range(dim):
        col_target += vecs[0, c] * vecs[0, c]
    colsum = np.zeros(dim, np.int64)
    options = np.zeros((target + 1, words), np.uint64)
    cand = np.zeros((target + 1, words), np.uint64)
    chosen = np.full(target + 1, -1, np.int64)
    for v in range(nvec):
        cand[0, v >> 6] |= _U1 << np.uint64(v & 63)
    nodes = 0
    depth = 0
    fresh = True
    while True:
        if fresh:
            fresh = False
            best = -1
            best_count = nvec + 1
            left = 0
            for w in range(words):
                left += _popcount(cand[depth, w])
            dead = left < target - depth
            if not dead:
                for c in range(dim):
                    if colsum[c] == col_target:
                        continue
                    cnt = 0
                    for w in range(words):
                        cnt += _popcount(cand[depth, w] & colmask[c, w])
                    if cnt < best_count:
                        best_count = cnt
                        best = c
                        if cnt == 0:
                            break
            if best < 0 and not dead:
                return 1, chosen[:depth].copy(), nodes
            for w in range(words):
                if dead or best_count == 0:
                    options[depth, w] = np.uint64(0)
                else:
                    options[depth, w] = cand[depth, w] & colmask[best, w]
        # next option at this depth
        v = -1
        for w in range(words):
            word = options[depth, w]
            if word != 0:
                low = word & (~word + _U1)
                v = w * 64 + np.int64(_popcount(low - _U1))
                options[depth, w] = word ^ low
                break
        if v < 0:
            depth -= 1
            if depth < 0:
                return 0, chosen[:0].copy(), nodes
            u = chosen[depth]
            for c in range(dim):
                colsum[c] -= vecs[u, c] * vecs[u, c]
            chosen[depth] = -1
            # every frame through u at this level has been seen
            cand[depth, u >> 6] &= ~(_U1 << np.uint64(u & 63))
            continue
        nodes += 1
        if budget > 0 and nodes > budget:
            return -1, chosen[:depth].copy(), nodes
        chosen[depth] = v
        for w in range(words):
            cand[depth + 1, w] = cand[depth, w] & adj[v, w]
        for c in range(dim):
            sq = vecs[v, c] * vecs[v, c]
            if sq:
                colsum[c] += sq
                room = col_target - colsum[c]
                for w in range(words):
                    cand[depth + 1, w] &= ~over[c, room, w]
        depth += 1
        if depth == target:
            return 1, chosen[:depth].copy(), nodes
        fresh = True


def frame_search(vecs, target: int, budget: int, *, backend: str | None = None):
    """Search for ``target`` pairwise-orthogonal vectors among ``vecs`` (one per ±pair).

    All rows of ``vecs`` must share the same squared length.  Returns
    ``(status, indices, nodes)`` with status 1 found / 0 none / -1 budget hit.
    """
    vecs = np.ascontiguousarray(vecs, np.int64)
    nvec, dim = vecs.shape
    if nvec == 0:
        return 0, np.zeros(0, np.int64), 0
    words = (nvec + 63) // 64
    gram = vecs @ vecs.T
    adj = np.zeros((nvec, words), np.uint64)
    colmask = np.zeros((dim, words), np.uint64)
    bit = _U1 << (np.arange(nvec) % 64).astype(np.uint64)
    word = np.arange(nvec) // 64
    for v in range(nvec):
        hits = np.nonzero(gram[v] == 0)[0]
        np.bitwise_or.at(adj[v], word[hits], bit[hits])
    col_target = int(vecs[0] @ vecs[0])
    over = np.zeros((dim, col_target + 1, words), np.uint64)
    squares = vecs * vecs
    for c in range(dim):
        hits = np.nonzero(squares[:, c])[0]
        np.bitwise_or.at(colmask[c], word[hits], bit[hits])
        for room in range(col_target + 1):
            hits = np.nonzero(squares[:, c] > room)[0]
            np.bitwise_or.at(over[c, room], word[hits], bit[hits])
    fn = _frame_search if _resolve(backend) == "numba" else _frame_search.py_func
    return fn(vecs, adj, colmask, over, int(target), int(budget))
