"""
Small-code decoders: exhaustive ML, flooding min-sum and a BSC simulator.

LLRs follow the convention gamma_i = log(P(w_i | y_i = 0) / P(w_i | y_i = 1)),
so a positive value favors 0 and the ML codeword minimizes sum(gamma_i * y_i).
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_DECODER, DEFAULT_GUARDS, DecoderConfig
from .errors import DimensionMismatchError, InvalidParameterError
from .gf2 import BitMatrix, Codeword, codeword_masks, mask_to_bits, support
from .tanner import build_tanner, settling_rounds

logger = logging.getLogger(__name__)

LlrVector = np.ndarray
TIE_TOLERANCE = 1e-9
SeedLike = Union[int, np.random.Generator, None]


def as_llr(values: Sequence[float], clip: float = DEFAULT_DECODER.llr_clip) -> LlrVector:
    """
    Convert to a float array clipped to [-clip, clip].

    Raises:
        InvalidParameterError: If any value is NaN
    """
    llr = np.asarray(values, dtype=float)
    if llr.ndim != 1:
        raise DimensionMismatchError(f"LLR vector must be 1-D, got shape {llr.shape}")
    if np.isnan(llr).any():
        raise InvalidParameterError("LLR vector contains NaN")
    return np.clip(llr, -clip, clip)


def _check_length(H: BitMatrix, llr: LlrVector) -> None:
    if llr.shape[0] != H.n_cols:
        raise DimensionMismatchError(
            f"LLR vector has length {llr.shape[0]}, matrix has {H.n_cols} columns"
        )


def codeword_array(H: BitMatrix, dim_guard: int = DEFAULT_GUARDS.dim_guard) -> np.ndarray:
    """Every codeword as a row of a uint8 array, in lexicographic order."""
    words = sorted(mask_to_bits(w, H.n_cols) for w in codeword_masks(H, dim_guard))
    return np.array(words, dtype=np.uint8).reshape(len(words), H.n_cols)


def ml_decode(
    H: BitMatrix,
    llr: Sequence[float],
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
    clip: float = DEFAULT_DECODER.llr_clip,
) -> Codeword:
    """
    Codeword minimizing sum(gamma_i * y_i), by exhaustive search.

    LLRs are clipped to [-clip, clip] first, so infinite values act as
    hard decisions. Ties go to the lexicographically smallest codeword.

    Raises:
        GuardExceededError: If the code is too large to enumerate
    """
    gamma = as_llr(llr, clip)
    _check_length(H, gamma)
    words = codeword_array(H, dim_guard)
    costs = words.astype(float) @ gamma
    best = int(np.argmin(costs))
    return tuple(int(b) for b in words[best])


@dataclass(frozen=True)
class DecodeResult:
    """
    Attributes:
        hard_decision: bit i is 1 when the total LLR of bit i is negative
        converged: True iff the hard decision satisfies every check
        iterations_used: message-passing rounds run
        matched_codeword: the hard decision when converged
        soft_output: final total LLR per bit
    """

    hard_decision: Codeword
    converged: bool
    iterations_used: int
    matched_codeword: Optional[Codeword]
    soft_output: Tuple[float, ...]


def _signs(x: np.ndarray) -> np.ndarray:
    return np.where(x < 0, -1.0, 1.0)


def min_sum_decode(
    H: BitMatrix,
    llr: Sequence[float],
    max_iters: Optional[int] = None,
    config: DecoderConfig = DEFAULT_DECODER,
) -> DecodeResult:
    """
    Flooding min-sum decoding on T(H).

    Each round every check sends, along each edge, the product of the
    signs and the minimum magnitude of its other incoming messages;
    degree-1 checks send +llr_clip.

    A round is final once the check messages stop changing or, with
    ``config.stop_on_syndrome`` and no damping, once as many rounds have
    run as :func:`pcw_analyzer.tanner.settling_rounds` gives; on a forest
    every message is exact from then on. With ``config.break_ties``, a
    final round that leaves some bit with total LLR 0 pins the first such
    bit to 0 and restarts the messages, so on a forest the result is the
    lexicographically smallest ML codeword. Decoding stops at a final
    round whose hard decision is a codeword (or whose messages are fixed),
    or after ``max_iters`` rounds.

    Args:
        H: parity-check matrix
        llr: channel LLRs
        max_iters: rounds to run at most; defaults to ``config.max_iters``
        config: clipping, damping, stopping and tie rules

    Raises:
        InvalidParameterError: If ``max_iters < 1``
        DimensionMismatchError: If the LLR length differs from n
    """
    iters = config.max_iters if max_iters is None else max_iters
    if iters < 1:
        raise InvalidParameterError(f"max_iters must be >= 1, got {iters}")
    clip = config.llr_clip
    gamma = as_llr(llr, clip)
    _check_length(H, gamma)
    horizon = settling_rounds(build_tanner(H))

    edge_bits = np.array(
        [i for row in H.rows for i in support(row)], dtype=np.intp
    )
    by_check: List[np.ndarray] = []
    start = 0
    for row in H.rows:
        deg = bin(row).count("1")
        by_check.append(np.arange(start, start + deg))
        start += deg

    c2v = np.zeros(len(edge_bits))
    v2c = gamma[edge_bits].copy()
    total = gamma.copy()
    hard = (total < 0).astype(np.uint8)
    H_arr = H.to_array()
    pinned = np.zeros(H.n_cols, dtype=bool)
    used = since = 0

    for it in range(1, iters + 1):
        used = it
        since += 1
        new = np.zeros_like(c2v)
        for edges in by_check:
            if len(edges) == 1:
                new[edges] = clip
            elif len(edges) > 1:
                incoming = v2c[edges]
                mags = np.abs(incoming)
                order = np.argsort(mags, kind="stable")
                min1, min2 = mags[order[0]], mags[order[1]]
                sign_all = np.prod(_signs(incoming))
                others = np.where(np.arange(len(edges)) == order[0], min2, min1)
                new[edges] = sign_all * _signs(incoming) * others
        if config.damping:
            new = (1.0 - config.damping) * new + config.damping * c2v
        settled = np.array_equal(new, c2v)
        c2v = new

        total = gamma + np.bincount(edge_bits, weights=c2v, minlength=H.n_cols)
        v2c = np.clip(total[edge_bits] - c2v, -clip, clip)
        hard = (total < 0).astype(np.uint8)
        satisfied = not (H_arr.astype(int) @ hard % 2).any()

        final = settled or (
            config.stop_on_syndrome and not config.damping and since >= horizon
        )
        if not final:
            continue
        ties = np.flatnonzero((np.abs(total) <= TIE_TOLERANCE) & ~pinned)
        if config.break_ties and ties.size:
            i = int(ties[0])
            logger.debug(f"min-sum pins tied bit x{i + 1} to 0 after {it} rounds")
            pinned[i] = True
            gamma[i] = clip
            c2v = np.zeros_like(c2v)
            v2c = gamma[edge_bits].copy()
            since = 0
            continue
        if satisfied or settled:
            break

    converged = not (H_arr.astype(int) @ hard % 2).any()
    decision = tuple(int(b) for b in hard)
    logger.debug(
        f"min-sum used {used} rounds, pinned {int(pinned.sum())} bits, converged={converged}"
    )
    return DecodeResult(
        hard_decision=decision,
        converged=converged,
        iterations_used=used,
        matched_codeword=decision if converged else None,
        soft_output=tuple(float(x) for x in total),
    )


def bsc_channel(
    codeword: Sequence[int],
    p: float,
    seed: SeedLike = None,
    clip: float = DEFAULT_DECODER.llr_clip,
) -> LlrVector:
    """
    Send ``codeword`` through a binary symmetric channel.

    Each bit flips independently with probability ``p``; a received 0
    maps to +log((1-p)/p) and a received 1 to its negative, clipped to
    [-clip, clip].

    Args:
        codeword: transmitted 0/1 word
        p: crossover probability, 0 < p < 0.5
        seed: integer seed or numpy Generator, for reproducible runs

    Raises:
        InvalidParameterError: If ``p`` is outside (0, 0.5)
    """
    if not 0 < p < 0.5:
        logger.error(f"invalid crossover probability {p}")
        raise InvalidParameterError(f"crossover probability must be in (0, 0.5), got {p}")
    rng = np.random.default_rng(seed)
    sent = np.asarray(codeword, dtype=np.uint8)
    flips = rng.random(sent.shape[0]) < p
    received = sent ^ flips.astype(np.uint8)
    magnitude = min(math.log((1 - p) / p), clip)
    return np.where(received == 0, magnitude, -magnitude)


def nearest_pseudocodeword(
    soft: Sequence[float], candidates: Sequence[Sequence[int]]
) -> Optional[int]:
    """
    Index of the candidate most aligned (cosine similarity) with the
    negative part of ``soft``; None when nothing is comparable.
    """
    u = np.maximum(-np.asarray(soft, dtype=float), 0.0)
    norm_u = np.linalg.norm(u)
    if not len(candidates) or norm_u == 0:
        return None
    best: Optional[int] = None
    best_score = -math.inf
    for k, candidate in enumerate(candidates):
        c = np.asarray(candidate, dtype=float)
        norm_c = np.linalg.norm(c)
        if norm_c == 0:
            continue
        score = float(u @ c) / (norm_u * norm_c)
        if score > best_score:
            best, best_score = k, score
    return best


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    p: float
    converged: bool
    iterations: int
    correct: bool
    nearest_pc_index: Optional[int]  # 0-based into the supplied candidates


def run_trials(
    H: BitMatrix,
    p: float,
    trials: int,
    seed: int = 0,
    config: DecoderConfig = DEFAULT_DECODER,
    pseudocodewords: Optional[Sequence[Sequence[int]]] = None,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
) -> List[TrialRecord]:
    """
    Monte-Carlo min-sum decoding over a BSC.

    Trial t uses the generator seeded with ``seed + t`` both to pick a
    codeword uniformly from C(H) and to drive the channel, so every trial
    is reproducible on its own.

    Args:
        H: parity-check matrix
        p: crossover probability
        trials: number of trials
        seed: base seed
        config: decoder settings
        pseudocodewords: candidates for failure attribution
        dim_guard: guard for enumerating C(H)

    Raises:
        InvalidParameterError: If ``trials < 1`` or ``p`` is invalid
    """
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    words = codeword_array(H, dim_guard)
    records = []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        sent = words[int(rng.integers(len(words)))]
        llr = bsc_channel(sent, p, rng, config.llr_clip)
        result = min_sum_decode(H, llr, config=config)
        correct = result.converged and result.hard_decision == tuple(int(b) for b in sent)
        nearest = None
        if not result.converged and pseudocodewords:
            nearest = nearest_pseudocodeword(result.soft_output, pseudocodewords)
        records.append(
            TrialRecord(seed + t, p, result.converged, result.iterations_used, correct, nearest)
        )
    failures = sum(1 for r in records if not r.correct)
    logger.info(f"{failures} of {trials} trials decoded incorrectly at p={p}")
    return records
