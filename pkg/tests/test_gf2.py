"""
Tests for GF(2) linear algebra.
"""

import pytest

from conftest import LENGTH7_GENERATORS, random_matrix
from pcw_analyzer.errors import (
    DimensionMismatchError,
    GuardExceededError,
    InvalidParameterError,
)
from pcw_analyzer.gf2 import (
    BitMatrix,
    bits_to_mask,
    hamming_weight,
    in_row_space,
    mask_to_bits,
    null_space_basis,
    null_space_codewords,
    rank,
    row_space_equal,
    row_space_vectors,
    row_sum,
)

IDENTITY_3 = BitMatrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_rank_examples(h_ex1, h_example, h_prime):
    assert rank(IDENTITY_3) == 3
    assert rank(h_ex1) == 2
    assert rank(h_example) == 5
    assert rank(h_prime) == 5


def test_null_space_of_small_example(h_ex1):
    assert null_space_codewords(h_ex1) == {
        (0, 0, 0, 0),
        (0, 1, 1, 1),
        (1, 0, 1, 0),
        (1, 1, 0, 1),
    }


def test_null_space_trivial_cases():
    zero_row = BitMatrix.from_lists([[0, 0, 0]])
    assert len(null_space_codewords(zero_row)) == 8
    assert null_space_codewords(IDENTITY_3) == {(0, 0, 0)}


def test_null_space_guard():
    wide = BitMatrix((0,), 25)
    with pytest.raises(GuardExceededError) as excinfo:
        null_space_codewords(wide, dim_guard=20)
    assert excinfo.value.actual == 25
    assert excinfo.value.limit == 20


def test_codeword_count_matches_rank(rng):
    for _ in range(60):
        r = int(rng.integers(1, 5))
        n = int(rng.integers(2, 9))
        H = random_matrix(rng, r, n)
        words = null_space_codewords(H)
        assert len(words) == 2 ** (n - rank(H))
        assert tuple([0] * n) in words
        for a in words:
            for b in list(words)[:5]:
                assert tuple(x ^ y for x, y in zip(a, b)) in words
        for word in words:
            assert H.syndrome(word) == tuple([0] * r)


def test_null_space_basis_size(h_example):
    basis = null_space_basis(h_example)
    assert len(basis) == 12 - 5
    assert all(h_example.syndrome(b) == (0,) * 6 for b in basis)


def test_row_space_equal_examples(h_ex1, h_example, h_prime):
    assert row_space_equal(h_example, h_prime)
    duplicated = BitMatrix(h_ex1.rows + (h_ex1.rows[0],), h_ex1.n_cols)
    assert row_space_equal(h_ex1, duplicated)
    rank_three = BitMatrix.from_lists([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    assert not row_space_equal(h_ex1, rank_three)


def test_row_space_equal_width_mismatch(h_ex1):
    with pytest.raises(DimensionMismatchError):
        row_space_equal(h_ex1, IDENTITY_3)


def test_row_space_equal_agrees_with_null_spaces(rng):
    for _ in range(60):
        n = int(rng.integers(2, 7))
        A = random_matrix(rng, int(rng.integers(1, 4)), n)
        B = random_matrix(rng, int(rng.integers(1, 4)), n)
        if rng.random() < 0.3:
            B = BitMatrix(tuple(reversed(A.rows)) + (A.rows[0] ^ A.rows[-1] or A.rows[0],), n)
        same = null_space_codewords(A) == null_space_codewords(B)
        assert row_space_equal(A, B) == same
        assert row_space_equal(B, A) == same


def test_row_space_equal_is_an_equivalence(rng):
    for _ in range(30):
        n = 5
        A = random_matrix(rng, 3, n)
        B = BitMatrix((A.rows[0] ^ A.rows[1], A.rows[1], A.rows[2]), n)
        C = BitMatrix((A.rows[2], A.rows[0], A.rows[1] ^ A.rows[2], A.rows[0]), n)
        assert row_space_equal(A, A)
        assert row_space_equal(A, B) and row_space_equal(B, C)
        assert row_space_equal(A, C)


def test_hamming_weight():
    assert hamming_weight((0, 0, 0, 0)) == 0
    assert hamming_weight((1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0)) == 4
    assert hamming_weight((1,) * 7) == 7
    assert hamming_weight(0b1011) == 3


def test_row_sum_examples(h_prime, h_example):
    assert row_sum(h_prime, {0, 1}) == (1, 1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0)
    assert row_sum(h_prime, {0, 1}) == h_example.row_bits(1)
    assert row_sum(h_prime, {2}) == h_prime.row_bits(2)
    assert row_sum(IDENTITY_3, {0}) == (1, 0, 0)


def test_row_sum_rejects_bad_indices(h_prime):
    with pytest.raises(InvalidParameterError):
        row_sum(h_prime, set())
    with pytest.raises(InvalidParameterError):
        row_sum(h_prime, {5})


def test_disjoint_rows_add_weights(rng):
    for _ in range(100):
        n = 10
        a = int(rng.integers(1, 1 << n))
        b = int(rng.integers(1, 1 << n)) & ~a
        if not b:
            continue
        H = BitMatrix((a, b), n)
        assert hamming_weight(row_sum(H, {0, 1})) == hamming_weight(a) + hamming_weight(b)


def test_row_space_vectors_and_membership(h_ex1):
    duals = row_space_vectors(h_ex1)
    assert len(duals) == 4
    assert in_row_space(h_ex1, (1, 0, 1, 1))
    assert not in_row_space(h_ex1, (1, 0, 0, 0))


def test_bit_packing():
    assert bits_to_mask((1, 0, 1)) == 0b101
    assert mask_to_bits(0b101, 4) == (1, 0, 1, 0)
    with pytest.raises(InvalidParameterError):
        bits_to_mask((1, 2))


def test_bit_matrix_validation():
    with pytest.raises(InvalidParameterError):
        BitMatrix((), 3)
    with pytest.raises(InvalidParameterError):
        BitMatrix((0b1000,), 3)
    with pytest.raises(DimensionMismatchError):
        BitMatrix.from_lists([[1, 0], [1]])
    assert BitMatrix.from_array(IDENTITY_3.to_array()) == IDENTITY_3


def test_length7_representations_share_a_code(star7, cycle7, mixed7):
    code = null_space_codewords(star7)
    assert len(code) == 16
    assert set(LENGTH7_GENERATORS) <= code
    assert null_space_codewords(cycle7) == code
    assert null_space_codewords(mixed7) == code
    assert row_space_equal(star7, cycle7)
