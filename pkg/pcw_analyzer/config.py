"""
Default limits and decoder settings.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Guards:
    """
    Limits on every exhaustive search in the package.

    Attributes:
        dim_guard: largest code dimension n - rank(H) enumerated explicitly
        cover_budget: largest number of cover specs examined by the oracle
        subset_guard: largest row count for the row-subset search
        search_budget: largest number of search nodes for pseudocodeword
            enumeration, reducibility and representation discovery
        dual_guard: largest rank(H) for which the dual code is enumerated
    """

    dim_guard: int = 20
    cover_budget: int = 10**6
    subset_guard: int = 24
    search_budget: int = 10**6
    dual_guard: int = 20


@dataclass(frozen=True)
class DecoderConfig:
    max_iters: int = 50
    llr_clip: float = 50.0
    damping: float = 0.0  # 0 disables damping
    stop_on_syndrome: bool = True
    break_ties: bool = True  # pin a tied bit to 0 and restart


DEFAULT_GUARDS = Guards()
DEFAULT_DECODER = DecoderConfig()
