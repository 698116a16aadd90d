"""
Tests for ML and min-sum decoding and the BSC simulator.
"""

import numpy as np
import pytest

from pcw_analyzer.config import DEFAULT_DECODER, DecoderConfig
from pcw_analyzer.decode import (
    as_llr,
    bsc_channel,
    codeword_array,
    min_sum_decode,
    ml_decode,
    nearest_pseudocodeword,
    run_trials,
)
from pcw_analyzer.errors import DimensionMismatchError, InvalidParameterError
from pcw_analyzer.gf2 import BitMatrix, null_space_codewords
from pcw_analyzer.tanner import (
    build_tanner,
    random_forest_matrix,
    random_tree_matrix,
    settling_rounds,
)

REPETITION_5 = BitMatrix.from_lists(
    [
        [1, 1, 0, 0, 0],
        [0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1],
    ]
)
RUN_TO_FIXED_POINT = DecoderConfig(stop_on_syndrome=False)


def test_ml_decode_prefers_smallest_codeword_on_ties(h_ex1):
    assert ml_decode(h_ex1, [0.0, 0.0, 0.0, 0.0]) == (0, 0, 0, 0)


def test_ml_decode_picks_lowest_cost(h_ex1):
    assert ml_decode(h_ex1, [-1.0, 2.0, -1.0, 2.0]) == (1, 0, 1, 0)
    assert ml_decode(h_ex1, [1.0, -3.0, -1.0, -1.0]) == (0, 1, 1, 1)


def test_ml_decode_clips_infinite_llrs(h_ex1):
    inf = float("inf")
    assert ml_decode(h_ex1, [-inf, 1.0, -1.0, 1.0]) == (1, 0, 1, 0)
    assert ml_decode(h_ex1, [inf] * 4) == (0, 0, 0, 0)


def test_ml_decode_is_scale_invariant(rng, star7):
    for _ in range(100):
        llr = rng.uniform(-5, 5, size=7)
        assert ml_decode(star7, llr) == ml_decode(star7, 3 * llr)


def test_ml_decode_returns_codewords(rng, h_example):
    code = null_space_codewords(h_example)
    for _ in range(20):
        assert ml_decode(h_example, rng.uniform(-5, 5, size=12)) in code


def test_codeword_array_order(h_ex1):
    words = codeword_array(h_ex1)
    assert words.dtype == np.uint8
    assert words.tolist() == [[0, 0, 0, 0], [0, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 1]]


def test_input_validation(h_ex1):
    with pytest.raises(InvalidParameterError):
        as_llr([1.0, float("nan")])
    with pytest.raises(DimensionMismatchError):
        ml_decode(h_ex1, [1.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        min_sum_decode(h_ex1, [1.0, 1.0, 1.0])
    with pytest.raises(InvalidParameterError):
        min_sum_decode(h_ex1, [1.0] * 4, max_iters=0)


def test_as_llr_clips():
    assert as_llr([100.0, -100.0, 1.5], clip=10.0).tolist() == [10.0, -10.0, 1.5]


def test_min_sum_on_clean_channel(h_example):
    result = min_sum_decode(h_example, [4.0] * 12)
    assert result.converged
    assert 1 <= result.iterations_used <= settling_rounds(build_tanner(h_example))
    assert result.hard_decision == (0,) * 12
    assert result.matched_codeword == (0,) * 12


def test_min_sum_matches_ml_on_forests(rng, star7):
    # once every message is final, min-sum on a forest is the ML decision
    matrices = [star7]
    for _ in range(10):
        r = int(rng.integers(1, 4))
        matrices.append(random_tree_matrix(r, int(rng.integers(r + 1, r + 4)), rng))
    for _ in range(5):
        matrices.append(random_forest_matrix([(1, 3), (2, 4)], rng))
    checked = 0
    for H in matrices:
        for _ in range(100):
            llr = rng.uniform(-5, 5, size=H.n_cols)
            expected = ml_decode(H, llr)
            for config in (DEFAULT_DECODER, RUN_TO_FIXED_POINT):
                result = min_sum_decode(H, llr, config=config)
                assert result.hard_decision == expected
                assert result.converged
            checked += 1
    assert checked >= 1000


def test_default_decoder_waits_for_exact_messages():
    H = BitMatrix.from_lists(
        [
            [1, 0, 0, 1, 1, 0, 0],
            [0, 1, 1, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 1, 1],
        ]
    )
    llr = [3.51, -4.46, 4.56, 0.54, -1.7, -0.14, -2.77]
    # 0001101 already satisfies every check after one round
    assert settling_rounds(build_tanner(H)) == 3
    result = min_sum_decode(H, llr)
    assert ml_decode(H, llr) == (0, 1, 1, 1, 1, 1, 1)
    assert result.hard_decision == (0, 1, 1, 1, 1, 1, 1)
    assert result.converged
    assert result.iterations_used <= 3


def test_min_sum_breaks_ties_like_ml(star7):
    # 1101010 sent, x2 flipped: 1011010 and 1101010 are equally likely
    llr = [-2.0, 2.0, 2.0, -2.0, 2.0, -2.0, 2.0]
    result = min_sum_decode(star7, llr)
    assert result.converged
    assert result.hard_decision == (1, 0, 1, 1, 0, 1, 0)
    assert result.hard_decision == ml_decode(star7, llr)

    unbroken = min_sum_decode(star7, llr, config=DecoderConfig(break_ties=False))
    assert not unbroken.converged


def test_min_sum_soft_output_length(h_prime, rng):
    result = min_sum_decode(h_prime, rng.uniform(-2, 2, size=12), max_iters=3)
    assert len(result.soft_output) == 12
    assert result.iterations_used <= 3


def test_damping_still_decodes_clean_channel(cycle7):
    config = DecoderConfig(damping=0.5)
    result = min_sum_decode(cycle7, [3.0] * 7, config=config)
    assert result.converged and result.hard_decision == (0,) * 7


def test_bsc_is_reproducible():
    word = [0, 1] * 50
    first = bsc_channel(word, 0.1, seed=11)
    second = bsc_channel(word, 0.1, seed=11)
    assert np.array_equal(first, second)


def test_bsc_flip_rate():
    word = np.zeros(20000, dtype=np.uint8)
    llr = bsc_channel(word, 0.1, seed=3)
    assert abs(float(np.mean(llr < 0)) - 0.1) < 0.01
    assert np.allclose(np.abs(llr), np.log(9.0))


def test_bsc_rejects_bad_probability():
    with pytest.raises(InvalidParameterError):
        bsc_channel([0, 0], 0.6)
    with pytest.raises(InvalidParameterError):
        bsc_channel([0, 0], 0.0)


def test_nearest_pseudocodeword():
    candidates = [(1, 1, 0), (0, 0, 1)]
    assert nearest_pseudocodeword((-1.0, -1.0, 1.0), candidates) == 0
    assert nearest_pseudocodeword((1.0, 1.0, -2.0), candidates) == 1
    assert nearest_pseudocodeword((1.0, 1.0, 1.0), candidates) is None
    assert nearest_pseudocodeword((-1.0, 0.0, 0.0), []) is None


def test_trials_are_deterministic(cycle7, mixed7):
    for H in (cycle7, mixed7):
        first = run_trials(H, 0.1, 40, seed=5)
        second = run_trials(H, 0.1, 40, seed=5)
        assert first == second
        assert [r.seed for r in first] == list(range(5, 45))


def test_single_trial_reproduces_from_its_seed(cycle7):
    records = run_trials(cycle7, 0.1, 10, seed=100)
    again = run_trials(cycle7, 0.1, 1, seed=records[7].seed)
    assert again[0] == records[7]


def test_trials_attribute_failures(cycle7):
    candidates = [(2, 0, 0, 1, 1, 1, 1), (0, 2, 0, 1, 1, 1, 1), (0, 0, 2, 1, 1, 1, 1)]
    records = run_trials(cycle7, 0.3, 60, seed=1, pseudocodewords=candidates)
    for r in records:
        if r.converged:
            assert r.nearest_pc_index is None
        elif r.nearest_pc_index is not None:
            assert 0 <= r.nearest_pc_index < 3


def test_trials_reject_bad_counts(cycle7):
    with pytest.raises(InvalidParameterError):
        run_trials(cycle7, 0.1, 0)


def test_equivalent_representations_differ_only_on_noisy_trials(cycle7, mixed7):
    words = codeword_array(cycle7)
    assert np.array_equal(words, codeword_array(mixed7))
    p, seed = 0.05, 7
    loopy = run_trials(cycle7, p, 200, seed=seed)
    redundant = run_trials(mixed7, p, 200, seed=seed)
    noisy = 0
    for t, (a, b) in enumerate(zip(loopy, redundant)):
        assert a.seed == b.seed == seed + t
        rng = np.random.default_rng(seed + t)
        sent = words[int(rng.integers(len(words)))]
        received = (bsc_channel(sent, p, rng) < 0).astype(np.uint8)
        if np.array_equal(received, sent):
            assert a.correct and b.correct
        else:
            noisy += 1
    assert noisy > 0
    clean = len(loopy) - noisy
    assert sum(r.correct for r in loopy) >= clean
    assert sum(r.correct for r in redundant) >= clean


@pytest.mark.slow
def test_repetition_code_rarely_fails():
    records = run_trials(REPETITION_5, 0.01, 1000, seed=0)
    assert sum(r.converged for r in records) >= 990


@pytest.mark.slow
def test_forest_codes_converge_at_low_noise(h_prime, star7):
    for H in (h_prime, star7):
        records = run_trials(H, 0.01, 1000, seed=0)
        assert sum(r.converged for r in records) >= 990
