"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3] [--code C26]

The first numba call of each kernel includes compilation (or a cache load),
so it is run once untimed.  Both backends must agree; the script checks that too.
"""

import argparse
import time

import numpy as np

from z4lat import kernels, lattice, tables


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def cases(code_name):
    C = tables.builtin_code(code_name)
    rows = np.vstack([C.upper, (2 * C.upper) % 4, C.lower])
    lo, hi = kernels.pack_z4(rows)
    yield (f"z4 histogram ({code_name}, 2^{C.n})",
           lambda b: kernels.z4_composition_histogram(lo, hi, C.n, backend=b))

    tor = C.torsion()
    gens = np.array(tor.rows, np.uint64)
    yield (f"binary weights (torsion, 2^{tor.k})", lambda b: kernels.weight_distribution(gens, C.n, backend=b))

    H = C.residue().dual()
    cols = np.array([sum(((r >> j) & 1) << i for i, r in enumerate(H.rows)) for j in range(C.n)], np.uint64)
    yield ("syndrome scan (w <= 4)", lambda b: kernels.syndrome_scan(cols, C.n, 4, w_min=1, backend=b))

    L = lattice.construction_a(tables.builtin_code("C26"))
    B = lattice.lll_reduce(L.M)
    mu, rdiag = lattice._gso(B)
    yield ("short vectors (C26, norm <= 3)", lambda b: len(kernels.short_vectors(B, mu, rdiag, 12, backend=b)[0]))

    vecs, _ = lattice.enumerate_short_vectors(L, 3)
    pairs = lattice._one_per_pair(vecs)
    yield ("3-frame search (C26, 10^5 nodes)", lambda b: kernels.frame_search(pairs, L.n, 10 ** 5, backend=b)[2])


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--code", default="C26", help="builtin code for the enumeration kernels")
    args = ap.parse_args()
    print(f"{'kernel':<36} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for label, run in cases(args.code):
        run("numba")
        t_nb, out_nb = best_of(lambda: run("numba"), args.repeat)
        t_np, out_np = best_of(lambda: run("numpy"), 1)
        flag = "" if same(out_nb, out_np) else "  MISMATCH"
        print(f"{label:<36} {t_nb:>9.4f} {t_np:>9.4f} {t_np / t_nb:>7.1f}x{flag}")


if __name__ == "__main__":
    main()
