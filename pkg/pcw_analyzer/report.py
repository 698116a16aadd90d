"""
Analysis reports and CSV output for PCW Analyzer.
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

import pandas as pd

from .config import DEFAULT_GUARDS, Guards
from .decode import TrialRecord
from .errors import GuardExceededError, OutOfHypothesisError, WitnessExhaustedError
from .gf2 import BitMatrix, rank
from .perfect import CycleFreeReference, is_geometrically_perfect, verdict_to_dict
from .pseudo import irreducible_pseudocodewords
from .tanner import (
    build_tanner,
    check_degrees,
    connected_components,
    girth,
    is_cycle_code,
    is_forest,
    tree_count,
    zero_checks,
)

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = ["seed", "p", "converged", "iterations", "correct", "nearest_pc_index"]


@dataclass
class AnalysisReport:
    """
    Everything ``analyze`` reports about one matrix (1-based indices).

    ``girth`` is None for a forest. ``partial`` is True when a guard or
    budget stopped part of the analysis.
    """

    n_rows: int
    n_cols: int
    rank: int
    row_weights: List[int]
    is_forest: bool
    girth: Optional[int]
    components: int
    trees: int
    check_degrees: List[int]
    zero_checks: List[int]
    is_cycle_code: bool
    verdict: Dict[str, Any]
    bound: Optional[int] = None
    irreducible: Optional[List[List[int]]] = None
    partial: bool = False
    notes: List[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisReport":
        return cls(**data)


def build_analysis_report(
    H: BitMatrix,
    reference: Optional[CycleFreeReference] = None,
    bound: Optional[int] = None,
    guards: Guards = DEFAULT_GUARDS,
) -> AnalysisReport:
    """
    Summarize the matrix and its Tanner graph and decide perfection.

    Args:
        H: parity-check matrix
        reference: cycle-free reference; discovered when omitted
        bound: when given, also list irreducible pseudocodewords up to it
        guards: search limits

    Returns:
        The report; guard failures are recorded in ``notes`` and ``partial``
    """
    started = time.perf_counter()
    G = build_tanner(H)
    g = girth(G)
    notes: List[str] = []
    partial = False

    zeros = zero_checks(G)
    if zeros:
        notes.append(f"all-zero rows: {', '.join(str(j + 1) for j in zeros)}")

    try:
        verdict = verdict_to_dict(
            is_geometrically_perfect(
                H,
                reference,
                subset_guard=guards.subset_guard,
                dual_guard=guards.dual_guard,
                search_budget=guards.search_budget,
                dim_guard=guards.dim_guard,
            )
        )
    except OutOfHypothesisError as e:
        verdict = {"verdict": "out-of-hypothesis", "reason": str(e)}
    except WitnessExhaustedError as e:
        logger.warning(f"No witness found: {e}")
        verdict = {"verdict": "undetermined", "reason": str(e)}
        partial = True
    except GuardExceededError as e:
        logger.warning(f"Perfection verdict incomplete: {e}")
        verdict = {"verdict": "undetermined", "reason": str(e)}
        partial = True

    irreducible = None
    if bound is not None:
        try:
            found = irreducible_pseudocodewords(
                H, bound, dim_guard=guards.dim_guard, search_budget=guards.search_budget
            )
            irreducible = [list(p) for p in sorted(found)]
        except GuardExceededError as e:
            logger.warning(f"Pseudocodeword listing incomplete: {e}")
            notes.append(f"irreducible pseudocodewords not listed: {e}")
            partial = True

    return AnalysisReport(
        n_rows=H.n_rows,
        n_cols=H.n_cols,
        rank=rank(H),
        row_weights=H.row_weights(),
        is_forest=is_forest(G),
        girth=None if g == float("inf") else int(g),
        components=len(connected_components(G)),
        trees=tree_count(G),
        check_degrees=check_degrees(G),
        zero_checks=[j + 1 for j in zeros],
        is_cycle_code=is_cycle_code(G),
        verdict=verdict,
        bound=bound,
        irreducible=irreducible,
        partial=partial,
        notes=notes,
        elapsed_seconds=round(time.perf_counter() - started, 6),
    )


def render_text(report: AnalysisReport) -> str:
    """Human-readable form of a report."""
    lines = [
        f"Matrix: {report.n_rows} x {report.n_cols}, rank {report.rank}",
        "=" * 80,
        f"  Row weights: {' '.join(map(str, report.row_weights))}",
        f"  Forest: {'yes' if report.is_forest else 'no'}",
        f"  Girth: {'infinite' if report.girth is None else report.girth}",
        f"  Connected components: {report.components} ({report.trees} with edges)",
        f"  Check degrees: {' '.join(map(str, report.check_degrees))}",
        f"  Cycle code: {'yes' if report.is_cycle_code else 'no'}",
        "-" * 80,
        f"  Verdict: {report.verdict['verdict']}",
    ]
    verdict = report.verdict
    if "kept_rows" in verdict:
        lines.append(f"  Kept rows: {' '.join(map(str, verdict['kept_rows']))}")
    if "witness" in verdict:
        lines.append(f"  Witness: {' '.join(map(str, verdict['witness']))}")
        if verdict["pivotal_check"] is None:
            lines.append(f"  Witness source: {verdict['witness_source']}")
        else:
            lines.append(
                f"  Pivotal check: f{verdict['pivotal_check']} of the reference "
                f"(degree {verdict['degree']})"
            )
            lines.append(f"  Component: {' '.join(f'x{i}' for i in verdict['component'])}")
    if "reason" in verdict:
        lines.append(f"  Reason: {verdict['reason']}")
    if report.irreducible is not None:
        lines.append("-" * 80)
        lines.append(
            f"  Irreducible pseudocodewords (entries <= {report.bound}): "
            f"{len(report.irreducible)}"
        )
        lines.extend(f"    {' '.join(map(str, p))}" for p in report.irreducible)
    for note in report.notes:
        lines.append(f"  Note: {note}")
    if report.partial:
        lines.append("  PARTIAL: a guard or budget stopped part of the analysis")
    lines.append(f"  Elapsed: {report.elapsed_seconds:.3f} s")
    return "\n".join(lines)


def trials_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Trial records as a DataFrame with the fixed column order (1-based index)."""
    frame = pd.DataFrame([asdict(r) for r in records], columns=TRIAL_COLUMNS)
    frame["nearest_pc_index"] = frame["nearest_pc_index"].astype("Int64") + 1
    return frame


def write_trials_csv(
    records: Sequence[TrialRecord], destination: Union[str, Path, TextIO]
) -> None:
    """
    Write trial records as CSV.

    Args:
        records: trial outcomes
        destination: file name, or an open text stream such as stdout

    Raises:
        ValueError: If there are no records
        PermissionError: If the file can't be written
    """
    if not records:
        raise ValueError("No trial records provided to write to CSV")

    frame = trials_frame(records)
    if not isinstance(destination, (str, Path)):
        frame.to_csv(destination, index=False)
        return

    output_path = Path(destination)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        frame.to_csv(output_path, index=False)
        logger.info(f"Successfully wrote {len(records)} trials to {output_path}")
    except PermissionError as e:
        logger.error(f"Permission denied writing to {output_path}: {e}")
        raise
    except OSError as e:
        logger.error(f"Unexpected error writing CSV file {output_path}: {e}")
        raise


def read_trials_csv(filename: Union[str, Path]) -> pd.DataFrame:
    """
    Read a CSV written by :func:`write_trials_csv`.

    Raises:
        FileNotFoundError: If the file doesn't exist
    """
    if not Path(filename).exists():
        raise FileNotFoundError(f"CSV file not found: {filename}")
    frame = pd.read_csv(filename)
    frame["nearest_pc_index"] = frame["nearest_pc_index"].astype("Int64")
    logger.info(f"Successfully read {len(frame)} trials from {filename}")
    return frame
