import itertools
import subprocess
import sys

import numpy as np
import pytest

from z4lat import kernels
from z4lat.kernels import (frame_search, pack_bits, pack_z4, scan_size, short_vectors, syndrome_scan,
                           weight_distribution, z4_composition_histogram)

BACKENDS = ["numba", "numpy"]


def brute_histogram(rows, n):
    out = np.zeros((n + 1, n + 1), np.int64)
    rows = np.asarray(rows) % 4
    for b in itertools.product(range(2), repeat=len(rows)):
        v = (np.array(b) @ rows) % 4 if len(rows) else np.zeros(n, np.int64)
        out[np.count_nonzero(v % 2), np.count_nonzero(v == 2)] += 1
    return out


@pytest.mark.parametrize("backend", BACKENDS)
def test_z4_histogram(rng, backend):
    for m in (0, 1, 5, 11, 14):
        n = int(rng.integers(1, 20))
        rows = rng.integers(0, 4, (m, n))
        lo, hi = pack_z4(rows) if m else (np.zeros(0, np.uint64), np.zeros(0, np.uint64))
        got = z4_composition_histogram(lo, hi, n, backend=backend)
        assert np.array_equal(got, brute_histogram(rows, n))


@pytest.mark.parametrize("backend", BACKENDS)
def test_weight_distribution(rng, backend):
    for m in (1, 4, 12, 17):
        n = int(rng.integers(m, 40))
        rows = rng.integers(0, 2, (m, n))
        got = weight_distribution(pack_bits(rows), n, backend=backend)
        ref = weight_distribution(pack_bits(rows), n, backend="numba" if backend == "numpy" else "numpy")
        assert np.array_equal(got, ref)
        assert got.sum() == 2 ** m
    rows = rng.integers(0, 2, (6, 9))
    counts = np.bincount([int(((np.array(b) @ rows) % 2).sum()) for b in itertools.product(range(2), repeat=6)],
                         minlength=10)
    assert np.array_equal(weight_distribution(pack_bits(rows), 9, backend=backend), counts)


@pytest.mark.parametrize("backend", BACKENDS)
def test_syndrome_scan(rng, backend):
    n, r = 14, 5
    H = rng.integers(0, 2, (r, n))
    cols = pack_bits(H.T)
    got = syndrome_scan(cols, n, 5, w_min=1, backend=backend)
    expected = []
    for w in range(1, 6):
        for supp in itertools.combinations(range(n), w):
            if not (H[:, supp].sum(axis=1) % 2).any():
                expected.append(sum(1 << j for j in supp))
    assert [int(x) for x in got] == expected
    assert len(syndrome_scan(cols, n, 5, w_min=1, limit=2, backend=backend)) == min(2, len(expected))
    assert scan_size(n, 2) == 1 + 14 + 91


def test_packing_limits():
    with pytest.raises(ValueError):
        pack_bits(np.zeros((1, 65)))
    with pytest.raises(ValueError):
        kernels._resolve("cuda")


@pytest.mark.parametrize("backend", BACKENDS)
def test_short_vectors_identity(backend):
    basis = np.eye(3, dtype=np.int64)
    vecs, nodes = short_vectors(basis, np.zeros((3, 3)), np.ones(3), 2, backend=backend)
    assert len(vecs) == 6 + 12 and nodes > 0
    assert all(1 <= int(v @ v) <= 2 for v in vecs)


@pytest.mark.parametrize("backend", BACKENDS)
def test_frame_search_backends(backend):
    # the six norm-2 pairs of Z^3 up to sign hold no three mutually orthogonal vectors
    pairs = [v for v in itertools.product((-1, 0, 1), repeat=3)
             if sum(x * x for x in v) == 2 and next(x for x in v if x) > 0]
    status, _, _ = frame_search(np.array(pairs), 3, 10 ** 6, backend=backend)
    assert status == 0
    conf = np.array([[0, 1, 1, 1], [1, 0, 1, -1], [1, -1, 0, 1], [1, 1, -1, 0]])
    status, idx, _ = frame_search(conf, 4, 10 ** 6, backend=backend)
    assert status == 1 and sorted(idx) == [0, 1, 2, 3]
    status, _, nodes = frame_search(conf, 4, 1, backend=backend)
    assert status == -1 and nodes >= 1


def test_env_flag_selects_numpy():
    code = "from z4lat import _accel; print(_accel.USE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"Z4LAT_NO_NUMBA": "1", "PATH": ""}, check=True)
    assert out.stdout.strip() == "False"
