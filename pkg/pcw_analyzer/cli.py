#!/usr/bin/env python3
"""
Command-line interface for PCW Analyzer.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .config import DEFAULT_DECODER, DEFAULT_GUARDS, DecoderConfig, Guards
from .cover import oracle_pc_set
from .decode import run_trials
from .errors import (
    DimensionMismatchError,
    GuardExceededError,
    InvalidParameterError,
    MatrixFormatError,
    NotApplicableError,
    OutOfHypothesisError,
    ReferenceInvalidError,
    SearchBudgetExceededError,
    VerificationError,
    WitnessExhaustedError,
)
from .gf2 import BitMatrix, null_space_codewords
from .matrix_io import FORMATS, load_matrix
from .perfect import (
    CycleFreeReference,
    construct_witness,
    describe_nodes,
    validate_reference,
)
from .pseudo import (
    check_report,
    enumerate_pseudocodewords,
    extraneous_generators,
    format_vector,
    irreducible_pseudocodewords,
    is_pseudocodeword,
    parse_vector,
)
from .report import build_analysis_report, render_text, write_trials_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def setup_logging(debug: bool = False) -> None:
    """
    Setup logging configuration.

    Logs go to stderr so that reports and CSV on stdout stay clean.

    Args:
        debug: If True, set logging level to DEBUG
    """
    level: int = logging.DEBUG if debug else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def _guards(args: argparse.Namespace) -> Guards:
    return Guards(
        dim_guard=args.dim_guard,
        cover_budget=args.cover_budget,
        subset_guard=args.subset_guard,
        search_budget=args.search_budget,
        dual_guard=args.dual_guard,
    )


def _load(args: argparse.Namespace) -> BitMatrix:
    return load_matrix(args.matrix, args.format)


def _emit_json(data: Dict[str, Any]) -> None:
    print(json.dumps(data, indent=2))


def _print_vectors(title: str, vectors: Sequence[Sequence[int]]) -> None:
    print(f"\n{title}: {len(vectors)}")
    print("=" * 80)
    for v in vectors:
        print(format_vector(v))


def cmd_analyze(args: argparse.Namespace) -> int:
    H = _load(args)
    reference = None
    if args.reference:
        reference = CycleFreeReference(load_matrix(args.reference, args.format), "user")
    report = build_analysis_report(H, reference, args.bound, _guards(args))

    if args.json:
        _emit_json(report.to_dict())
    else:
        print(render_text(report))

    if report.partial:
        return EXIT_BUDGET
    if report.verdict["verdict"] == "out-of-hypothesis":
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify_pc(args: argparse.Namespace) -> int:
    H = _load(args)
    vector = parse_vector(args.vector)
    codewords = None
    if args.certificate:
        codewords = null_space_codewords(H, args.dim_guard)
    report = check_report(H, vector, codewords, args.search_budget)

    if args.json:
        _emit_json(report)
    elif report["is_pseudocodeword"]:
        print(f"PASS: ({format_vector(vector)}) is a pseudocodeword")
        if "reducible" in report:
            if report["reducible"]:
                print("  Combination of codewords:")
                for term in report["certificate"]:
                    print(f"    {term['coefficient']} x ({term['codeword']})")
            else:
                print("  Irreducible: no nonnegative integer combination of codewords")
    else:
        print(f"FAIL: ({format_vector(vector)}) is not a pseudocodeword")
        if report["violation"] == "negative":
            print(f"  Entry {report['failing_position']} is negative")
        elif report["violation"] == "cone":
            print(
                f"  Row {report['failing_row']}, position {report['failing_position']}: "
                f"entry exceeds the sum of the other entries in the row"
            )
        else:
            print(f"  Row {report['failing_row']}: weighted sum is odd")
    return EXIT_OK if report["is_pseudocodeword"] else EXIT_NEGATIVE


def cmd_enumerate(args: argparse.Namespace) -> int:
    H = _load(args)
    complete = True
    try:
        if args.extraneous_only:
            found = extraneous_generators(H, args.bound, args.dim_guard, args.search_budget)
        elif args.irreducible_only:
            found = irreducible_pseudocodewords(
                H, args.bound, args.dim_guard, args.search_budget
            )
        else:
            found = enumerate_pseudocodewords(H, args.bound, args.search_budget)
    except SearchBudgetExceededError as e:
        if args.irreducible_only or args.extraneous_only or e.partial is None:
            raise
        logger.warning(f"Enumeration incomplete: {e}")
        found = e.partial
        complete = False

    vectors = [list(p) for p in sorted(found)]
    if args.json:
        _emit_json({"bound": args.bound, "complete": complete, "vectors": vectors})
    else:
        _print_vectors(f"Pseudocodewords with entries <= {args.bound}", vectors)
        if not complete:
            print("PARTIAL: search budget reached")
    return EXIT_OK if complete else EXIT_BUDGET


def cmd_witness(args: argparse.Namespace) -> int:
    H = _load(args)
    ref = CycleFreeReference(load_matrix(args.reference, args.format), "user")
    validate_reference(H, ref)
    hint = None if args.component is None else args.component - 1
    witness = construct_witness(H, ref, component_hint=hint, subset_guard=args.subset_guard)
    passes_h = is_pseudocodeword(H, witness.vector)
    passes_ref = is_pseudocodeword(ref.matrix, witness.vector)
    pivotal = witness.pivotal_check

    if args.json:
        _emit_json(
            {
                "witness": list(witness.vector),
                "pivotal_check": None if pivotal is None else pivotal + 1,
                "degree": witness.degree,
                "component": [i + 1 for i in witness.component],
                "pseudocodeword_of_matrix": passes_h,
                "pseudocodeword_of_reference": passes_ref,
            }
        )
    else:
        print("\nWitness pseudocodeword:")
        print("=" * 80)
        print(f"  Vector: {format_vector(witness.vector)}")
        print(f"  Pivotal check: {describe_nodes(ref, witness)}")
        print(f"  Pseudocodeword of matrix: {'yes' if passes_h else 'no'}")
        print(f"  Pseudocodeword of reference: {'yes' if passes_ref else 'no'}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    H = _load(args)
    result = oracle_pc_set(H, args.m_max, args.dim_guard, args.cover_budget)
    vectors = [list(p) for p in sorted(result.vectors)]
    if args.json:
        _emit_json(
            {
                "m_max": args.m_max,
                "complete": result.complete,
                "covers_examined": result.specs_examined,
                "vectors": vectors,
            }
        )
    else:
        _print_vectors(f"Cover pseudocodewords up to degree {args.m_max}", vectors)
        print(f"\nCovers examined: {result.specs_examined}")
        if not result.complete:
            print("PARTIAL: cover budget reached")
    return EXIT_OK if result.complete else EXIT_BUDGET


def cmd_decode_sim(args: argparse.Namespace) -> int:
    H = _load(args)
    config = DecoderConfig(
        max_iters=args.max_iters,
        llr_clip=args.llr_clip,
        damping=args.damping,
        stop_on_syndrome=DEFAULT_DECODER.stop_on_syndrome,
    )
    candidates: Optional[List[List[int]]] = None
    if args.attribute_bound is not None:
        found = irreducible_pseudocodewords(
            H, args.attribute_bound, args.dim_guard, args.search_budget
        )
        candidates = [list(p) for p in sorted(found)]
    records = run_trials(
        H, args.p, args.trials, args.seed, config, candidates, args.dim_guard
    )
    write_trials_csv(records, args.output if args.output else sys.stdout)
    if args.output:
        failures = sum(1 for r in records if not r.correct)
        print("\nSummary:")
        print(f"  Trials: {len(records)}")
        print(f"  Decoding failures: {failures}")
        print(f"  Results saved to: {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per analysis."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('matrix', help='Parity-check matrix file (dense or alist)')
    common.add_argument(
        '--format', choices=FORMATS, default='auto',
        help='Matrix file format (default: auto)'
    )
    common.add_argument('--json', action='store_true', help='Emit JSON instead of text')
    common.add_argument('-d', '--debug', action='store_true', help='Show debug logs')
    common.add_argument(
        '--dim-guard', type=int, default=DEFAULT_GUARDS.dim_guard,
        help=f'Largest code dimension enumerated (default: {DEFAULT_GUARDS.dim_guard})'
    )
    common.add_argument(
        '--cover-budget', type=int, default=DEFAULT_GUARDS.cover_budget,
        help=f'Largest number of covers examined (default: {DEFAULT_GUARDS.cover_budget})'
    )
    common.add_argument(
        '--subset-guard', type=int, default=DEFAULT_GUARDS.subset_guard,
        help=f'Largest row count for row-subset search (default: {DEFAULT_GUARDS.subset_guard})'
    )
    common.add_argument(
        '--search-budget', type=int, default=DEFAULT_GUARDS.search_budget,
        help=f'Largest number of search nodes (default: {DEFAULT_GUARDS.search_budget})'
    )
    common.add_argument(
        '--dual-guard', type=int, default=DEFAULT_GUARDS.dual_guard,
        help=f'Largest rank whose dual code is enumerated (default: {DEFAULT_GUARDS.dual_guard})'
    )

    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog='analyze-pcm',
        description="Analyze pseudocodewords and geometric perfection of parity-check matrices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s analyze H.txt
  %(prog)s analyze H.txt --reference H_forest.txt --bound 2 --json
  %(prog)s verify-pc H.txt "2 2 8 8 8 8 2 2 2 2 2 2"
  %(prog)s enumerate H2.txt --bound 2 --irreducible-only
  %(prog)s witness H.txt --reference H_forest.txt --component 3
  %(prog)s oracle H.txt --m-max 2
  %(prog)s decode-sim H.txt --p 0.05 --trials 1000 --seed 7 -o trials.csv
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', parents=[common], help='Full matrix report')
    analyze.add_argument('--reference', help='Cycle-free reference matrix file')
    analyze.add_argument(
        '--bound', type=int, default=None,
        help='Also list irreducible pseudocodewords with entries up to this bound'
    )
    analyze.set_defaults(func=cmd_analyze)

    verify = sub.add_parser('verify-pc', parents=[common], help='Test one vector')
    verify.add_argument('vector', help='Space-separated integer vector')
    verify.add_argument(
        '--certificate', action='store_true',
        help='Also decide reducibility and print the codeword combination'
    )
    verify.set_defaults(func=cmd_verify_pc)

    enum = sub.add_parser('enumerate', parents=[common], help='Bounded enumeration')
    enum.add_argument('--bound', type=int, required=True, help='Largest entry value')
    enum.add_argument(
        '--irreducible-only', action='store_true',
        help='Only pseudocodewords that are not combinations of codewords'
    )
    enum.add_argument(
        '--extraneous-only', action='store_true',
        help='Only irreducible pseudocodewords that are not a sum of two others'
    )
    enum.set_defaults(func=cmd_enumerate)

    witness = sub.add_parser('witness', parents=[common], help='Construct a witness')
    witness.add_argument('--reference', required=True, help='Cycle-free reference matrix file')
    witness.add_argument(
        '--component', type=int, default=None,
        help='1-based bit index; use the component containing this bit'
    )
    witness.set_defaults(func=cmd_witness)

    oracle = sub.add_parser('oracle', parents=[common], help='Exhaustive cover search')
    oracle.add_argument('--m-max', type=int, default=2, help='Largest cover degree (default: 2)')
    oracle.set_defaults(func=cmd_oracle)

    sim = sub.add_parser('decode-sim', parents=[common], help='Min-sum over a BSC')
    sim.add_argument('--p', type=float, required=True, help='Crossover probability')
    sim.add_argument('--trials', type=int, default=1000, help='Number of trials (default: 1000)')
    sim.add_argument('--seed', type=int, default=0, help='Base seed (default: 0)')
    sim.add_argument(
        '--max-iters', type=int, default=DEFAULT_DECODER.max_iters,
        help=f'Min-sum rounds (default: {DEFAULT_DECODER.max_iters})'
    )
    sim.add_argument(
        '--llr-clip', type=float, default=DEFAULT_DECODER.llr_clip,
        help=f'LLR magnitude limit (default: {DEFAULT_DECODER.llr_clip})'
    )
    sim.add_argument(
        '--damping', type=float, default=DEFAULT_DECODER.damping,
        help='Check message damping in [0, 1) (default: 0)'
    )
    sim.add_argument(
        '--attribute-bound', type=int, default=None,
        help='Attribute failures to irreducible pseudocodewords up to this bound'
    )
    sim.add_argument('-o', '--output', help='Save CSV to this file instead of stdout')
    sim.set_defaults(func=cmd_decode_sim)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI function; returns the process exit code."""
    parser = build_parser()
    args: argparse.Namespace = parser.parse_args(argv)

    # Setup logging
    setup_logging(args.debug)

    try:
        return int(args.func(args))
    except (MatrixFormatError, DimensionMismatchError, InvalidParameterError) as e:
        logging.error(f"Input error: {e}")
        print(f"Error: {e}")
        return EXIT_INPUT
    except FileNotFoundError as e:
        logging.error(f"File error: {e}")
        print(f"Error: {e}")
        return EXIT_INPUT
    except ReferenceInvalidError as e:
        logging.error(f"Invalid reference: {e}")
        print(f"Error: invalid reference: {e}")
        return EXIT_INPUT
    except GuardExceededError as e:
        logging.error(f"Guard exceeded: {e}")
        print(f"Error: {e}")
        return EXIT_BUDGET
    except (NotApplicableError, OutOfHypothesisError) as e:
        print(f"Not applicable: {e}")
        return EXIT_NEGATIVE
    except (WitnessExhaustedError, VerificationError) as e:
        logging.error(f"Witness construction failed: {e}")
        print(f"Error: {e}")
        return EXIT_NEGATIVE
    except KeyboardInterrupt:
        logging.info("Operation cancelled by user")
        print("\nOperation cancelled by user")
        return EXIT_NEGATIVE
    except Exception as e:
        logging.error(f"Unexpected error: {e}")
        print(f"Unexpected error: {e}")
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
