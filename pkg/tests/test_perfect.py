"""
Tests for perfection verdicts, reference discovery and witness construction.
"""

from dataclasses import fields

import pytest

from conftest import FALLBACK_H, FALLBACK_REF, PIVOT_WITNESS
from pcw_analyzer import perfect
from pcw_analyzer.errors import (
    GuardExceededError,
    NotApplicableError,
    OutOfHypothesisError,
    ReferenceInvalidError,
    VerificationError,
    WitnessExhaustedError,
)
from pcw_analyzer.gf2 import BitMatrix, null_space_codewords, rank, row_space_equal
from pcw_analyzer.perfect import (
    CycleFreeReference,
    Imperfect,
    Perfect,
    Witness,
    construct_witness,
    describe_nodes,
    find_cycle_free_representation,
    find_cycle_free_subrepresentation,
    is_geometrically_perfect,
    search_witness,
    validate_reference,
    verdict_from_dict,
    verdict_to_dict,
    witness_candidates,
)
from pcw_analyzer.pseudo import (
    ReductionCertificate,
    enumerate_pseudocodewords,
    irreducible_pseudocodewords,
    is_pseudocodeword,
    is_reducible,
)
from pcw_analyzer.tanner import (
    build_tanner,
    is_forest,
    p_satisfied,
    random_forest_matrix,
    random_tree_matrix,
)

HAMMING_7 = BitMatrix.from_lists(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
)


def _random_invertible(rng, r):
    while True:
        rows = tuple(int(rng.integers(1, 1 << r)) for _ in range(r))
        if rank(BitMatrix(rows, r)) == r:
            return rows


def _transform(rng, ref: BitMatrix) -> BitMatrix:
    """Rows of T * ref for a random invertible T, plus a few redundant rows."""
    r = ref.n_rows
    if rng.random() < 0.3:
        T = tuple(1 << j for j in range(r))
    else:
        T = _random_invertible(rng, r)
    rows = []
    for t in T:
        row = 0
        for j in range(r):
            if t >> j & 1:
                row ^= ref.rows[j]
        rows.append(row)
    for _ in range(int(rng.integers(0, 3))):
        subset = int(rng.integers(1, 1 << r))
        row = 0
        for j in range(r):
            if subset >> j & 1:
                row ^= ref.rows[j]
        rows.append(row)
    return BitMatrix(tuple(rows), ref.n_cols)


def test_subrepresentation_examples(h_prime, h_example, mixed7):
    assert find_cycle_free_subrepresentation(h_prime) == (0, 1, 2, 3, 4)
    assert find_cycle_free_subrepresentation(h_example) is None
    assert find_cycle_free_subrepresentation(mixed7) == (0, 1, 2)


def test_subrepresentation_guard(h_example):
    with pytest.raises(GuardExceededError):
        find_cycle_free_subrepresentation(h_example, subset_guard=3)


def test_discovers_star_representation(cycle7):
    ref = find_cycle_free_representation(cycle7)
    assert ref is not None
    assert ref.provenance == "discovered"
    assert sorted(ref.matrix.rows) == [7, 25, 97]
    assert is_forest(build_tanner(ref.matrix))


def test_forest_is_its_own_representation(h_prime):
    ref = find_cycle_free_representation(h_prime)
    assert ref is not None and ref.matrix == h_prime


def test_hamming_code_has_no_cycle_free_representation():
    # three weight-4 checks on seven bits exceed the edge count of any forest
    assert find_cycle_free_representation(HAMMING_7) is None
    with pytest.raises(OutOfHypothesisError):
        is_geometrically_perfect(HAMMING_7)


def test_verdicts_on_examples(h_prime, h_example, cycle7, mixed7):
    verdict = is_geometrically_perfect(h_prime)
    assert isinstance(verdict, Perfect)
    assert verdict.kept_rows == (0, 1, 2, 3, 4)

    verdict = is_geometrically_perfect(h_example, CycleFreeReference(h_prime))
    assert isinstance(verdict, Imperfect)
    assert not verdict.is_perfect
    assert verdict.witness.vector == (8,) + (2,) * 11
    assert verdict.witness.pivotal_check == 1

    assert isinstance(is_geometrically_perfect(h_example), Imperfect)
    assert isinstance(is_geometrically_perfect(cycle7), Imperfect)

    verdict = is_geometrically_perfect(mixed7)
    assert verdict.is_perfect
    assert verdict.kept_rows == (0, 1, 2)


def test_witness_with_component_hint(h_example, h_prime):
    witness = construct_witness(h_example, CycleFreeReference(h_prime), component_hint=2)
    assert witness.vector == PIVOT_WITNESS
    assert witness.component == (2, 3, 4, 5)
    assert witness.degree == 4
    assert witness.pivotal_check == 1
    assert not p_satisfied(build_tanner(h_prime), 1, witness.vector)
    assert "f2 (degree 4" in describe_nodes(CycleFreeReference(h_prime), witness)


def test_witness_falls_back_to_full_reference():
    H = BitMatrix.from_lists([[1, 1, 1], [1, 1, 0]])
    ref = CycleFreeReference(BitMatrix.from_lists([[1, 1, 0], [0, 0, 1]]))
    witness = construct_witness(H, ref)
    assert witness.vector == (2, 2, 2)
    assert witness.pruned is False
    assert witness.degree == 1


def test_witness_not_applicable(mixed7, h_prime):
    ref = find_cycle_free_representation(mixed7)
    with pytest.raises(NotApplicableError):
        construct_witness(mixed7, ref)
    with pytest.raises(NotApplicableError):
        construct_witness(h_prime, CycleFreeReference(h_prime))


def test_invalid_references(h_example, h_prime, h_ex1):
    with pytest.raises(ReferenceInvalidError):
        validate_reference(h_prime, CycleFreeReference(h_example))
    with pytest.raises(ReferenceInvalidError):
        validate_reference(h_example, CycleFreeReference(h_prime.select_rows(range(4))))
    with pytest.raises(ReferenceInvalidError):
        is_geometrically_perfect(h_prime, CycleFreeReference(h_ex1))


def test_candidates_cover_every_pivotal_check(h_example, h_prime):
    checks = {c.pivotal_check for c in witness_candidates(h_example, CycleFreeReference(h_prime))}
    assert checks == set(range(5))


def test_verdict_dict_round_trip(h_example, h_prime):
    for H in (h_prime, h_example):
        verdict = is_geometrically_perfect(H, CycleFreeReference(h_prime))
        data = verdict_to_dict(verdict)
        assert verdict_from_dict(data) == verdict
    data = verdict_to_dict(is_geometrically_perfect(h_example, CycleFreeReference(h_prime)))
    assert data["verdict"] == "imperfect"
    assert data["pivotal_check"] == 2
    assert data["component"] == [1]


def _random_reference(rng) -> BitMatrix:
    if rng.random() < 0.3:
        sizes = []
        for _ in range(2):
            r = int(rng.integers(1, 3))
            sizes.append((r, int(rng.integers(r + 1, r + 3))))
        return random_forest_matrix(sizes, rng)
    r = int(rng.integers(2, 5))
    return random_tree_matrix(r, int(rng.integers(r + 1, r + 4)), rng)


def test_perfection_matches_pseudocodeword_sets(rng):
    """
    Imperfect verdicts carry an irreducible pseudocodeword of H that is not
    one of H'; perfect verdicts leave no irreducible pseudocodeword.
    """
    perfect_seen = imperfect_seen = 0
    cases = [(FALLBACK_H, FALLBACK_REF)]
    for _ in range(60):
        ref_matrix = _random_reference(rng)
        cases.append((_transform(rng, ref_matrix), ref_matrix))

    for H, ref_matrix in cases:
        assert row_space_equal(H, ref_matrix)
        verdict = is_geometrically_perfect(H, CycleFreeReference(ref_matrix))
        if verdict.is_perfect:
            perfect_seen += 1
            assert enumerate_pseudocodewords(H, 2) == enumerate_pseudocodewords(ref_matrix, 2)
            assert irreducible_pseudocodewords(H, 2) == frozenset()
        else:
            imperfect_seen += 1
            w = verdict.witness.vector
            assert max(w) <= 2 * max(ref_matrix.row_weights())
            assert is_pseudocodeword(H, w)
            assert not is_pseudocodeword(ref_matrix, w)
            assert is_reducible(w, null_space_codewords(H)) is None
    assert perfect_seen and imperfect_seen


def test_search_fallback_when_construction_runs_out():
    ref = CycleFreeReference(FALLBACK_REF)
    with pytest.raises(WitnessExhaustedError):
        construct_witness(FALLBACK_H, ref)

    verdict = is_geometrically_perfect(FALLBACK_H, ref)
    assert isinstance(verdict, Imperfect)
    witness = verdict.witness
    assert witness.source == "search"
    assert witness.pivotal_check is None
    assert max(witness.vector) <= 2
    assert witness.vector in irreducible_pseudocodewords(FALLBACK_H, 2)
    assert describe_nodes(ref, witness).startswith("none")

    data = verdict_to_dict(verdict)
    assert data["witness_source"] == "search"
    assert data["pivotal_check"] is None
    assert verdict_from_dict(data) == verdict


def test_search_witness_takes_the_lightest_vector():
    H = BitMatrix.from_lists([[1, 1, 1], [1, 1, 0]])
    ref = CycleFreeReference(BitMatrix.from_lists([[1, 1, 0], [0, 0, 1]]))
    assert search_witness(H, ref) == Witness((1, 1, 2), None, (), 0, False, "search")


def test_bad_witness_is_rejected(monkeypatch, h_example, h_prime):
    codeword = max(null_space_codewords(h_example))
    bogus = Witness(codeword, 0, (), 2, True)
    monkeypatch.setattr(perfect, "construct_witness", lambda *args, **kwargs: bogus)
    with pytest.raises(VerificationError, match="reference"):
        is_geometrically_perfect(h_example, CycleFreeReference(h_prime))


def test_reducible_witness_is_rejected(monkeypatch, h_example, h_prime):
    certificate = ReductionCertificate({(1,) * 12: 1})
    monkeypatch.setattr(perfect, "is_reducible", lambda *args, **kwargs: certificate)
    with pytest.raises(VerificationError, match="sum of codewords"):
        is_geometrically_perfect(h_example, CycleFreeReference(h_prime))


def test_verdict_kind_is_a_field(h_prime):
    ref = CycleFreeReference(h_prime)
    assert Perfect(ref).kind == "perfect"
    assert Imperfect(ref).kind == "imperfect"
    assert "kind" in {f.name for f in fields(Imperfect)}
    with pytest.raises(TypeError):
        Perfect(ref, kind="imperfect")
