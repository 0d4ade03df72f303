import itertools

import numpy as np
import pytest
from conftest import brute_codewords, klemm4, octacode, random_self_dual
from test_series import representations

from z4lat import lattice
from z4lat.lattice import (LatticeBasis, NotUnimodular, construction_a, enumerate_short_vectors, find_k_frame,
                           lattice_report, lift_counts, min_norm_and_kissing, short_vector_counts,
                           standard_frame_check, ternary_frame_obstruction, theta_prefix, verify_unimodular)
from z4lat.weights import min_weights
from z4lat.z4 import CodeType, NotSelfDual, Z4Code, twos_code


def test_integer_lattice_from_twos_code():
    C = twos_code(1)
    L = construction_a(C)
    assert L.M.tolist() == [[2]]
    assert verify_unimodular(L) == "odd"
    assert min_norm_and_kissing(C) == (1, 2)
    assert theta_prefix(C, 4).integer_coefficients() == [1, 2, 0, 0, 2]


def test_e8_from_octacode():
    C = octacode()
    L = construction_a(C)
    assert verify_unimodular(L) == "even"
    assert min_norm_and_kissing(C) == (2, 240)
    assert find_k_frame(L, 2).status == "found"
    assert find_k_frame(L, 1).status == "none"


def test_unimodular_and_parity_random(rng):
    for n in range(1, 17):
        C = random_self_dual(n, rng)
        L = construction_a(C)
        G = L.gram()
        assert L.determinant in (1, -1)
        assert np.array_equal(G, G.T)
        parity = verify_unimodular(L)
        assert parity == ("even" if C.classify_type() is CodeType.TYPE_II else "odd")


def test_builtin_lattices_unimodular(builtin_codes):
    for C in builtin_codes.values():
        L = construction_a(C)
        assert abs(L.determinant) == 1
        assert verify_unimodular(L) == "odd"
        assert standard_frame_check(L)


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        verify_unimodular(LatticeBasis(4 * np.eye(3, dtype=np.int64)))
    with pytest.raises(NotUnimodular):
        verify_unimodular(LatticeBasis(np.array([[1]])))
    with pytest.raises(NotSelfDual):
        construction_a(Z4Code([[1, 1]]))


def test_min_norm_rule(rng, builtin_codes):
    cases = [random_self_dual(n, rng) for n in range(1, 17)] + list(builtin_codes.values())
    for C in cases:
        d_E = min_weights(C).euclidean
        mu, N = min_norm_and_kissing(C)
        assert 4 * mu == min(16, d_E)
        assert theta_prefix(C, mu).integer_coefficients()[mu] == N


def test_lift_counts_of_zero_word_give_theta_of_2z():
    for n in (1, 2, 3):
        counts = lift_counts(n, 0, 0, 64)
        for s, c in enumerate(counts):
            assert c == (representations(n, s // 16) if s % 16 == 0 else 0)


def test_lift_counts_brute_force():
    for zeros, units, twos in [(1, 1, 1), (0, 3, 0), (2, 0, 2), (1, 2, 1)]:
        n = zeros + units + twos
        residues = [0] * zeros + [1] * units + [2] * twos
        budget = 40
        counts = [0] * (budget + 1)
        for x in itertools.product(range(-7, 8), repeat=n):
            if all(v % 4 == r for v, r in zip(x, residues)):
                s = sum(v * v for v in x)
                if s <= budget:
                    counts[s] += 1
        assert list(lift_counts(zeros, units, twos, budget)) == counts


def test_theta_prefix_matches_enumeration(rng):
    for n in range(2, 15, 3):
        C = random_self_dual(n, rng)
        L = construction_a(C)
        assert theta_prefix(C, 3).integer_coefficients() == short_vector_counts(L, 3)


def test_short_vector_backends_agree():
    L = construction_a(klemm4())
    a, _ = enumerate_short_vectors(L, 3, backend="numba")
    b, _ = enumerate_short_vectors(L, 3, backend="numpy")
    assert sorted(map(tuple, a)) == sorted(map(tuple, b))
    assert len(a) == sum(short_vector_counts(L, 3)[1:])


def test_contains(rng):
    C = random_self_dual(8, rng)
    L = construction_a(C)
    generic = LatticeBasis(L.M)
    for w in brute_codewords(C)[:40]:
        x = w + 4 * rng.integers(-2, 3, C.n)
        assert L.contains(x) and generic.contains(x)
    bad = np.zeros(8, np.int64)
    bad[0] = 1
    assert L.contains(bad) == C.contains(bad % 4) == generic.contains(bad)


def test_frames_in_small_lattices():
    Z4 = construction_a(twos_code(4))
    r = find_k_frame(Z4, 3)
    assert r.status == "found"
    F = r.frame
    assert np.array_equal(F @ F.T, 12 * np.eye(4, dtype=np.int64))
    assert find_k_frame(construction_a(twos_code(3)), 2).status == "none"
    assert find_k_frame(construction_a(twos_code(1)), 1).status == "found"


def test_frame_budget(monkeypatch):
    L = construction_a(octacode())
    assert find_k_frame(L, 4, budget=2).status == "budget_exhausted"
    monkeypatch.setenv("Z4LAT_FRAME_BUDGET", "3")
    assert lattice.frame_budget() == 3
    assert find_k_frame(L, 4).status == "budget_exhausted"


def test_ternary_obstruction():
    assert ternary_frame_obstruction(26, 3, 3120)
    assert ternary_frame_obstruction(27, 3, 2664)
    assert "2240" in ternary_frame_obstruction(28, 3, 1728)
    assert ternary_frame_obstruction(28, 3, 2240) is None
    # odd Leech lattice: 48 + 4048 norm-3 vectors
    assert ternary_frame_obstruction(24, 3, 4096) is None
    assert ternary_frame_obstruction(4, 1, 8) is None


def test_lattice_report(builtin_codes):
    rep = lattice_report(builtin_codes["C26"])
    assert (rep.min_norm, rep.kissing, rep.parity) == (3, 3120, "odd")
    assert rep.theta_prefix[0] == 1
    assert rep.theta_prefix.integer_coefficients()[rep.min_norm] == rep.kissing


def test_lattice_text_round_trip(rng):
    from z4lat.formats import format_lattice, parse_lattice

    L = construction_a(random_self_dual(6, rng))
    assert np.array_equal(parse_lattice(format_lattice(L)).M, L.M)
