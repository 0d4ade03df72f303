"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (also repeated
in the terminal summary) before asserting.  Comparisons are exact; runtimes
are checked against the stated targets.
"""

import time
from fractions import Fraction

import numpy as np
from conftest import ACCEPTANCE_LINES, random_self_dual

from z4lat import lattice, tables, series, verify, weights
from z4lat.z4 import shorten_sub

DIM41_N = [15426, 1223136, 42945024, 867179520, 11719744560, 116521216256, 909236984832]


def report(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def failures(results) -> list[str]:
    return [f"{r.id} expected {r.expected} got {r.computed}" for r in results if r.status == verify.FAIL]


def test_criterion_1_table2():
    start = time.perf_counter()
    results = verify.verify("table2")
    structured = time.perf_counter() - start
    bad = failures(results)
    start = time.perf_counter()
    for name in ("C26", "C27", "C28"):
        C = tables.builtin_code(name)
        if weights.min_weights_full(C) != weights.min_weights(C):
            bad.append(f"{name}: full 2^n enumeration disagrees with the structured search")
    full = time.perf_counter() - start
    ok = not bad and structured < 300 and full < 600
    report(1, ok, f"11 codes exact ({structured:.1f}s structured, {full:.1f}s full 2^n for C26-C28)"
           if ok else "; ".join(bad) or f"too slow: {structured:.0f}s / {full:.0f}s")


def test_criterion_2_table3():
    start = time.perf_counter()
    results = verify.verify("table3")
    elapsed = time.perf_counter() - start
    bad = failures(results)
    enumerated = sum(r.id.endswith(":enumeration") for r in results)
    ok = not bad and enumerated == 3 and elapsed < 600
    report(2, ok, f"11 (mu, kissing) pairs exact, {enumerated} confirmed by enumeration ({elapsed:.1f}s)"
           if ok else "; ".join(bad) or f"{enumerated} enumerations, {elapsed:.0f}s")


def test_criterion_3_swe26():
    start = time.perf_counter()
    results = verify.verify("swe26")
    elapsed = time.perf_counter() - start
    terms = tables.swe26_terms()
    anchors = {(23, 0, 3): 30, (14, 12, 0): 2880, (10, 16, 0): 17408, (0, 0, 26): 1}
    bad = failures(results) + [f"anchor {m}" for m, c in anchors.items() if terms.get(m) != c]
    ok = not bad and elapsed < 120
    report(3, ok, f"{len(terms)} printed coefficients exact ({elapsed:.1f}s)" if ok else "; ".join(bad[:5]))


def test_criterion_4_dim41_theta():
    N4 = lattice.min_norm_and_kissing(tables.builtin_code("C41"))[1]
    start = time.perf_counter()
    res = series.dim41_analysis(N4)
    elapsed = time.perf_counter() - start
    a = tuple(int(x) for x in res.decomposition.a[:4])
    coeffs = res.theta.integer_coefficients()[4:11]
    ok = a == (1, -82, 1476, -3280) and (res.alpha, res.beta) == (2, 0) and coeffs == DIM41_N and elapsed < 1
    report(4, ok, f"a0..a3={a} alpha={res.alpha} beta={res.beta} N4..N10 exact ({elapsed * 1000:.0f}ms)")


def test_criterion_5_shadow():
    res = series.dim41_analysis(15426)
    start = time.perf_counter()
    S = series.shadow(res.decomposition, 44)
    rep = series.shadow_constraints(S, 4)
    elapsed = time.perf_counter() - start
    b94 = S.coefficient(Fraction(9, 4))
    ok = rep.ok and S.is_nonnegative_integral() and b94 == 2 and elapsed < 1
    report(5, ok, f"shadow conditions hold, B9/4={b94} ({elapsed * 1000:.0f}ms)"
           if ok else "; ".join(rep.lines()))


def test_criterion_6_bounds_and_table1():
    start = time.perf_counter()
    data = tables.load()["d_max_bound"]["values"]
    bad = [f"n={n}" for n in range(25, 48) if weights.dmax_upper_bound(n) != data[str(n)]]
    subs = {name: weights.min_weights(shorten_sub(tables.builtin_code(name))).euclidean for name in ("C26", "C36")}
    if subs != {"C26": 8, "C36": 12}:
        bad.append(f"sub d_E {subs}")
    bad += failures(verify.verify("table1"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(6, ok, f"bounds 25..47 exact, d_E(sub C26)=8, d_E(sub C36)=12 ({elapsed:.1f}s)" if ok else "; ".join(bad))


def test_criterion_7_properties(builtin_codes):
    rng = np.random.default_rng(7)
    codes = [random_self_dual(n, rng) for n in range(1, 17) for _ in range(2)] + list(builtin_codes.values())
    bad = []
    for C in codes:
        tag = C.name or f"random n={C.n}"
        if not C.dual().dual().same_span(C) or not C.dual().same_span(C):
            bad.append(f"{tag}: dual")
        res, tor = C.residue(), C.torsion()
        if not res.is_doubly_even() or tor != res.dual():
            bad.append(f"{tag}: residue/torsion")
        d_E = weights.min_weights(C).euclidean
        enum = weights.swe(C, 16 if C.n > 16 else None)
        if any(e % 4 for e in enum.euclidean_distribution()):
            bad.append(f"{tag}: euclidean weight not divisible by 4")
        d1, d2 = res.min_weight(), tor.min_weight()
        low = 4 * d2 if d1 is None else min(d1, 4 * d2)
        if not low <= d_E <= 4 * d2:
            bad.append(f"{tag}: sandwich")
        mu, _ = lattice.min_norm_and_kissing(C)
        if mu != min(4, Fraction(d_E, 4)):
            bad.append(f"{tag}: min norm")
        if abs(lattice.construction_a(C).determinant) != 1:
            bad.append(f"{tag}: determinant")
    order = 200
    if series.theta2(order) ** 4 + series.theta4(order) ** 4 != series.theta3(order) ** 4:
        bad.append("jacobi")
    for n in (8, 23, 41, 47):
        dec = series.ThetaDecomposition(n, tuple(Fraction(int(x)) for x in rng.integers(-999, 999, n // 8 + 1)))
        if series.decompose(dec.reconstruct(4 * (n // 8) + 1), n).a != dec.a:
            bad.append(f"round trip n={n}")
    report(7, not bad, f"{len(codes)} codes, all properties hold" if not bad else "; ".join(bad[:5]))


def test_criterion_8_frames():
    start = time.perf_counter()
    results = verify.verify("frames")
    elapsed = time.perf_counter() - start
    bad = failures(results)
    searches = {r.id.split(":")[1]: r.computed for r in results if r.id.endswith(":3-frame")}
    warnings = [r.id for r in results if r.note.startswith("warning:")]
    ok = not bad and len(searches) == 3
    detail = (f"4-frames in all 11 lattices; 3-frame search {searches}; "
              f"ternary obstruction certified for C26-C28 ({elapsed:.0f}s)")
    if warnings:
        detail += f"; warning: budget exhausted for {', '.join(w.split(':')[1] for w in warnings)}"
    report(8, ok, detail if ok else "; ".join(bad))
