import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z4lat.gf2 import BinaryCode, BudgetExceeded, direct_sum, from_bits, popcount, rank, repetition, rref, to_bits


def brute_words(code: BinaryCode) -> list[int]:
    words = {0}
    for r in code.rows:
        words |= {w ^ r for w in words}
    return sorted(words)


codes = st.integers(1, 14).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=8).map(lambda rows: BinaryCode(n, rows))
)


def test_bits_round_trip():
    v = 0b1011001
    assert from_bits(to_bits(v, 9)) == v
    assert list(to_bits(0b110, 3)) == [0, 1, 1]


def test_rref_is_canonical():
    rows = [0b1100, 0b0110, 0b1010]
    basis, pivots = rref(rows)
    assert len(basis) == 2 == rank(rows)
    assert rref([0b1010, 0b0110])[0] == basis
    for b, p in zip(basis, pivots):
        assert (b >> p) & 1
        assert all(not (other >> p) & 1 for other in basis if other != b)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_dual_is_orthogonal_complement(code):
    dual = code.dual()
    assert dual.k == code.n - code.k
    assert all(popcount(a & b) % 2 == 0 for a in code.rows for b in dual.rows)
    assert dual.dual() == code


@settings(max_examples=60, deadline=None)
@given(codes)
def test_weight_distribution_matches_brute_force(code):
    dist = np.bincount([popcount(w) for w in brute_words(code)], minlength=code.n + 1)
    assert np.array_equal(code.weight_distribution(), dist)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_min_weight_strategies_agree(code):
    nonzero = [popcount(w) for w in brute_words(code) if w]
    expected = min(nonzero) if nonzero else None
    assert code.min_weight("full_enumeration") == expected
    assert code.min_weight("low_weight_scan", max_weight=code.n) == expected
    assert code.min_weight() == expected


@settings(max_examples=40, deadline=None)
@given(codes, st.integers(0, 6))
def test_low_weight_words_are_complete_and_sorted(code, w_max):
    expected = sorted((popcount(w), w) for w in brute_words(code) if popcount(w) <= w_max)
    got = [(popcount(w), w) for w in code.low_weight_words(w_max)]
    assert got == expected


@settings(max_examples=40, deadline=None)
@given(codes)
def test_doubly_even_row_criterion(code):
    assert code.is_doubly_even() == all(popcount(w) % 4 == 0 for w in brute_words(code))


@settings(max_examples=40, deadline=None)
@given(codes, st.data())
def test_projection_counts(code, data):
    n = code.n
    mask = data.draw(st.integers(0, (1 << n) - 1))
    shift = data.draw(st.integers(0, (1 << n) - 1))
    v = data.draw(st.integers(0, (1 << n) - 1)) & mask
    expected = sum(1 for s in brute_words(code) if (shift ^ s) & mask == v)
    assert code.coset_count_with_projection(shift, mask, v) == expected


def test_contains_and_subcode():
    ham = BinaryCode.from_matrix([[1, 0, 0, 0, 0, 1, 1], [0, 1, 0, 0, 1, 0, 1],
                                  [0, 0, 1, 0, 1, 1, 0], [0, 0, 0, 1, 1, 1, 1]])
    assert ham.k == 4 and ham.min_weight() == 3
    assert ham.dual().is_subcode_of(ham)
    assert all(ham.contains(w) for w in ham.codewords())
    assert not ham.contains(1)
    assert list(np.nonzero(ham.weight_distribution())[0]) == [0, 3, 4, 7]


def test_zero_code_and_full_space():
    assert BinaryCode(5).min_weight() is None
    assert BinaryCode.full_space(5).min_weight() == 1
    assert BinaryCode.full_space(5).dual().k == 0


def test_direct_sum_and_repetition():
    c = direct_sum(repetition(3), repetition(4))
    assert c.n == 7 and c.k == 2 and c.min_weight() == 3


def test_scan_refuses_beyond_cap():
    # seven [8,4,4] plus one [7,4,3]: k = 32 is past full enumeration, d = 3 is past the cap
    ext = BinaryCode.from_matrix([[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 0, 0],
                                  [0, 0, 0, 0, 1, 1, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]])
    ham = BinaryCode.from_matrix([[1, 0, 0, 0, 0, 1, 1], [0, 1, 0, 0, 1, 0, 1],
                                  [0, 0, 1, 0, 1, 1, 0], [0, 0, 0, 1, 1, 1, 1]])
    code = ham
    for _ in range(7):
        code = direct_sum(code, ext)
    assert code.k == 32
    with pytest.raises(BudgetExceeded):
        code.min_weight("low_weight_scan", max_weight=2)
    assert code.min_weight("low_weight_scan", max_weight=3) == 3


def test_self_orthogonal():
    ext_ham = BinaryCode.from_matrix([[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 0, 0],
                                      [0, 0, 0, 0, 1, 1, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]])
    assert ext_ham.is_self_orthogonal() and ext_ham.is_doubly_even()
    assert ext_ham.dual() == ext_ham
    assert not repetition(3).is_self_orthogonal()


def test_codewords_enumeration_order_covers_all():
    code = BinaryCode.from_matrix([[1, 1, 0], [0, 1, 1]])
    assert sorted(code.codewords()) == sorted(brute_words(code))
    assert len(list(itertools.islice(code.codewords(), 10))) == 4
