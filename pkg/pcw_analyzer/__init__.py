"""
PCW Analyzer - pseudocodewords, graph covers and geometric perfection of
binary parity-check matrices.
"""

from .config import DEFAULT_DECODER, DEFAULT_GUARDS, DecoderConfig, Guards
from .cover import CoverSpec, OracleResult, cover_pseudocodewords, lift_matrix, oracle_pc_set
from .decode import DecodeResult, bsc_channel, min_sum_decode, ml_decode, run_trials
from .errors import (
    DimensionMismatchError,
    GuardExceededError,
    InvalidParameterError,
    MatrixFormatError,
    NotApplicableError,
    OutOfHypothesisError,
    PcwAnalyzerError,
    ReferenceInvalidError,
    SearchBudgetExceededError,
    WitnessExhaustedError,
)
from .gf2 import (
    BitMatrix,
    hamming_weight,
    null_space_codewords,
    rank,
    row_space_equal,
    row_sum,
)
from .matrix_io import load_matrix, parse_matrix
from .perfect import (
    CycleFreeReference,
    Imperfect,
    Perfect,
    PerfectionVerdict,
    Witness,
    construct_witness,
    find_cycle_free_representation,
    find_cycle_free_subrepresentation,
    is_geometrically_perfect,
)
from .pseudo import (
    ReductionCertificate,
    enumerate_pseudocodewords,
    in_fundamental_cone,
    irreducible_pseudocodewords,
    is_pseudocodeword,
    is_reducible,
)
from .report import AnalysisReport, build_analysis_report, write_trials_csv
from .tanner import (
    TannerGraph,
    build_tanner,
    check_degrees,
    connected_components,
    girth,
    is_forest,
    p_satisfied,
    prune_degree_one_checks,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BitMatrix",
    "CoverSpec",
    "CycleFreeReference",
    "DEFAULT_DECODER",
    "DEFAULT_GUARDS",
    "DecodeResult",
    "DecoderConfig",
    "DimensionMismatchError",
    "GuardExceededError",
    "Guards",
    "Imperfect",
    "InvalidParameterError",
    "MatrixFormatError",
    "NotApplicableError",
    "OracleResult",
    "OutOfHypothesisError",
    "PcwAnalyzerError",
    "Perfect",
    "PerfectionVerdict",
    "ReductionCertificate",
    "ReferenceInvalidError",
    "SearchBudgetExceededError",
    "TannerGraph",
    "Witness",
    "WitnessExhaustedError",
    "bsc_channel",
    "build_analysis_report",
    "build_tanner",
    "check_degrees",
    "connected_components",
    "construct_witness",
    "cover_pseudocodewords",
    "enumerate_pseudocodewords",
    "find_cycle_free_representation",
    "find_cycle_free_subrepresentation",
    "girth",
    "hamming_weight",
    "in_fundamental_cone",
    "irreducible_pseudocodewords",
    "is_forest",
    "is_geometrically_perfect",
    "is_pseudocodeword",
    "is_reducible",
    "lift_matrix",
    "load_matrix",
    "min_sum_decode",
    "ml_decode",
    "null_space_codewords",
    "oracle_pc_set",
    "p_satisfied",
    "parse_matrix",
    "prune_degree_one_checks",
    "rank",
    "row_space_equal",
    "row_sum",
    "run_trials",
    "write_trials_csv",
]
