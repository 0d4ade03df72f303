"""Shared fixtures: small known codes, a random self-dual code generator, brute-force oracles."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from z4lat import tables
from z4lat.gf2 import BinaryCode, from_bits, rank, to_bits
from z4lat.z4 import Z4Code

OCTACODE = [
    [1, 0, 0, 0, 3, 1, 2, 1],
    [0, 1, 0, 0, 1, 2, 3, 1],
    [0, 0, 1, 0, 3, 3, 3, 2],
    [0, 0, 0, 1, 2, 3, 1, 1],
]
# Klemm code K4: all-ones plus twice the even-weight vectors
KLEMM4 = [[1, 1, 1, 1], [0, 2, 0, 2], [0, 0, 2, 2]]


def octacode() -> Z4Code:
    return Z4Code(OCTACODE, name="octacode")


def klemm4() -> Z4Code:
    return Z4Code(KLEMM4, name="K4")


def _random_doubly_even(n: int, k: int, rng: np.random.Generator) -> list[int]:
    rows: list[int] = []
    if n < 4:
        return rows
    for _ in range(5000):
        if len(rows) == k:
            break
        w = int(rng.integers(1, n // 4 + 1)) * 4
        v = from_bits(np.isin(np.arange(n), rng.choice(n, w, replace=False)).astype(int))
        if all(bin(v & r).count("1") % 2 == 0 for r in rows) and rank(rows + [v]) == len(rows) + 1:
            rows.append(v)
    return rows


def random_self_dual(n: int, rng: np.random.Generator, k1: int | None = None) -> Z4Code:
    """Random self-dual code: doubly-even residue, greedy lift, torsion = residue dual.

    Finishes with a random coordinate permutation and random negations.
    """
    k = int(rng.integers(0, n // 2 + 1)) if k1 is None else k1
    res = _random_doubly_even(n, k, rng)
    R = np.array([to_bits(r, n) for r in res], dtype=np.int64).reshape(len(res), n)
    lifts = []
    for i, r in enumerate(R):
        # choose twos d with d.r_j = (|r_i & r_j|/2 + d_j.r_i) mod 2 for j < i
        target = [((int(r @ R[j]) // 2) + int(lifts[j][1] @ r)) % 2 for j in range(i)]
        d = _solve_gf2(R[:i], np.array(target, dtype=np.int64), n, rng)
        lifts.append((r, d))
    top = [(r + 2 * d) % 4 for r, d in lifts]
    dual = BinaryCode(n, res).dual()
    bottom = [2 * to_bits(b, n) for b in dual.rows]
    G = np.array(top + bottom, dtype=np.int64).reshape(len(top) + len(bottom), n)
    perm = rng.permutation(n)
    signs = rng.choice([1, 3], n)
    return Z4Code((G[:, perm] * signs) % 4)


def _solve_gf2(A: np.ndarray, b: np.ndarray, n: int, rng) -> np.ndarray:
    """Some solution ``d`` of ``A d = b`` over GF(2); rows of ``A`` are independent."""
    m = len(A)
    if m == 0:
        return np.zeros(n, np.int64)
    aug = np.hstack([A % 2, b.reshape(m, 1) % 2]).astype(np.int64)
    pivots = []
    row = 0
    for col in range(n):
        hit = next((r for r in range(row, m) if aug[r, col]), None)
        if hit is None:
            continue
        aug[[row, hit]] = aug[[hit, row]]
        for r in range(m):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    d = np.zeros(n, np.int64)
    for r, col in enumerate(pivots):
        d[col] = aug[r, n]
    return d


def brute_codewords(C: Z4Code) -> np.ndarray:
    """All codewords by summing every combination of generators (independent of the standard form)."""
    G = C.generators
    seen = {tuple([0] * C.n)}
    frontier = [np.zeros(C.n, np.int64)]
    while frontier:
        nxt = []
        for v in frontier:
            for g in G:
                w = (v + g) % 4
                t = tuple(w)
                if t not in seen:
                    seen.add(t)
                    nxt.append(w)
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)


def brute_dual_size(C: Z4Code) -> int:
    return sum(1 for x in itertools.product(range(4), repeat=C.n) if not ((C.generators @ np.array(x)) % 4).any())


@pytest.fixture(scope="session")
def builtin_codes():
    return {name: tables.builtin_code(name) for name in tables.BUILTIN_CODES}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
