"""
Geometric perfection for codes that admit a cycle-free representation.

A parity-check matrix H of such a code is geometrically perfect exactly
when redundant rows can be deleted from H to leave a matrix whose Tanner
graph is a forest. When no such deletion exists, a cycle-free reference
H' for the same code contains a pivotal check f of degree d; setting 2d
on the bit nodes of one component of T(H') minus f, and 2 on every other
bit node, yields a pseudocodeword of H that is not one of H', which makes
it irreducible.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Tuple

from .config import DEFAULT_GUARDS
from .errors import (
    GuardExceededError,
    NotApplicableError,
    OutOfHypothesisError,
    ReferenceInvalidError,
    SearchBudgetExceededError,
    VerificationError,
    WitnessExhaustedError,
)
from .gf2 import (
    BitMatrix,
    null_space_codewords,
    rank,
    row_space_equal,
    row_space_vectors,
    support,
)
from .pseudo import PseudoVector, enumerate_pseudocodewords, is_pseudocodeword, is_reducible
from .tanner import (
    bit,
    build_tanner,
    check,
    connected_components,
    is_forest,
    p_satisfied,
    prune_degree_one_checks,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleFreeReference:
    """
    A representation H' of C(H) whose Tanner graph is a forest.

    Attributes:
        matrix: H'
        provenance: "user" when supplied, "discovered" when found by search
    """

    matrix: BitMatrix
    provenance: str = "user"


def validate_reference(H: BitMatrix, ref: CycleFreeReference) -> None:
    """
    Check that ``ref`` is cycle-free and represents the same code as ``H``.

    Raises:
        ReferenceInvalidError: If either condition fails
    """
    if ref.matrix.n_cols != H.n_cols:
        logger.error("reference width differs from the matrix")
        raise ReferenceInvalidError(
            f"reference has {ref.matrix.n_cols} columns, matrix has {H.n_cols}"
        )
    if not is_forest(build_tanner(ref.matrix)):
        logger.error("reference Tanner graph has a cycle")
        raise ReferenceInvalidError("reference Tanner graph contains a cycle")
    if not row_space_equal(H, ref.matrix):
        logger.error("reference represents a different code")
        raise ReferenceInvalidError("reference and matrix have different null spaces")


def find_cycle_free_subrepresentation(
    H: BitMatrix, subset_guard: int = DEFAULT_GUARDS.subset_guard
) -> Optional[Tuple[int, ...]]:
    """
    Find rows of H that span its row space and form a forest.

    Returns every row when T(H) is already a forest. Otherwise only
    subsets of exactly rank(H) rows are tried, in lexicographic order:
    deleting rows from a forest leaves a forest, so a larger spanning
    forest subset always contains one of that size.

    Args:
        H: parity-check matrix
        subset_guard: largest row count searched

    Returns:
        0-based row indices, or None when no subset works

    Raises:
        GuardExceededError: If H has more than ``subset_guard`` rows
    """
    if is_forest(build_tanner(H)):
        return tuple(range(H.n_rows))
    if H.n_rows > subset_guard:
        logger.error(f"{H.n_rows} rows exceed the subset guard {subset_guard}")
        raise GuardExceededError("subset guard", subset_guard, H.n_rows)

    rho = rank(H)
    weights = H.row_weights()
    edge_limit = rho + H.n_cols - 1
    tried = 0
    for rows in itertools.combinations(range(H.n_rows), rho):
        if sum(weights[j] for j in rows) > edge_limit:
            continue
        tried += 1
        candidate = H.select_rows(rows)
        if rank(candidate) == rho and is_forest(build_tanner(candidate)):
            logger.info(f"Rows {[j + 1 for j in rows]} form a cycle-free representation")
            return rows
    logger.info(f"No cycle-free row subset among {tried} candidates of size {rho}")
    return None


class _Forest:
    """Union-find over bit nodes; a check node may join bits in distinct trees only."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def root(self, i: int) -> int:
        while self.parent[i] != i:
            i = self.parent[i]
        return i

    def join(self, cols: List[int]) -> Optional[List[int]]:
        roots = [self.root(i) for i in cols]
        if len(set(roots)) != len(roots):
            return None
        saved = list(self.parent)
        for r in roots[1:]:
            self.parent[r] = roots[0]
        return saved


def find_cycle_free_representation(
    H: BitMatrix,
    dual_guard: int = DEFAULT_GUARDS.dual_guard,
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> Optional[CycleFreeReference]:
    """
    Search the dual code for rank(H) vectors that span it and form a forest.

    Candidates are taken lightest first. A forest with s checks on n bits
    has at most s + n - 1 edges, which bounds the total weight.

    Args:
        H: parity-check matrix
        dual_guard: largest rank(H) whose dual code is enumerated
        search_budget: largest number of search nodes visited

    Returns:
        A discovered reference, or None when the code has no cycle-free
        representation

    Raises:
        GuardExceededError: If rank(H) exceeds ``dual_guard``
        SearchBudgetExceededError: If the search is too large to finish
    """
    if is_forest(build_tanner(H)):
        return CycleFreeReference(H, "discovered")
    rho = rank(H)

    duals = sorted(
        (v for v in row_space_vectors(H, dual_guard) if v),
        key=lambda v: (bin(v).count("1"), v),
    )
    weights = [bin(v).count("1") for v in duals]
    edge_limit = rho + H.n_cols - 1
    forest = _Forest(H.n_cols)
    chosen: List[int] = []
    nodes = 0

    def search(start: int, used: int) -> bool:
        nonlocal nodes
        if len(chosen) == rho:
            return True
        need = rho - len(chosen)
        for k in range(start, len(duals) - need + 1):
            if used + weights[k] * need > edge_limit:
                break
            nodes += 1
            if nodes > search_budget:
                logger.error(f"representation search exceeded {search_budget} nodes")
                raise SearchBudgetExceededError("search budget", search_budget, nodes)
            if rank(BitMatrix(tuple(chosen) + (duals[k],), H.n_cols)) < len(chosen) + 1:
                continue
            saved = forest.join(support(duals[k]))
            if saved is None:
                continue
            chosen.append(duals[k])
            if search(k + 1, used + weights[k]):
                return True
            chosen.pop()
            forest.parent = saved
        return False

    if not search(0, 0):
        logger.info(f"No cycle-free representation after {nodes} search nodes")
        return None
    logger.info(f"Found a cycle-free representation with {rho} rows")
    return CycleFreeReference(BitMatrix(tuple(chosen), H.n_cols), "discovered")


@dataclass(frozen=True)
class Witness:
    """
    An irreducible pseudocodeword of H that is not one of the reference.

    Attributes:
        vector: the pseudocodeword of H
        pivotal_check: 0-based row of the reference matrix, None for a
            searched witness
        component: 0-based bit indices that received 2d
        degree: d, the degree of the pivotal check (0 for a searched witness)
        pruned: True when built on the reference with degree-1 checks removed
        source: "construction" when built from a pivotal check, "search"
            when found by :func:`search_witness`
    """

    vector: PseudoVector
    pivotal_check: Optional[int]
    component: Tuple[int, ...]
    degree: int
    pruned: bool
    source: str = "construction"


def _candidates_on(
    M: BitMatrix, columns: Tuple[int, ...], rows: Tuple[int, ...], n: int, pruned: bool
) -> Iterator[Witness]:
    G = build_tanner(M)
    for f in range(M.n_rows):
        neighbors = set(M.row_support(f))
        d = len(neighbors)
        if d == 0:
            continue
        parts = []
        for component in connected_components(G, removed=check(f)):
            bits = sorted(x[1] for x in component if x[0] == "x")
            if neighbors & set(bits):
                parts.append(bits)
        for bits in sorted(parts):
            vector = [0] * n
            for k, col in enumerate(columns):
                vector[col] = 2 * d if k in bits else 2
            yield Witness(
                tuple(vector),
                rows[f],
                tuple(columns[k] for k in bits),
                d,
                pruned,
            )


def witness_candidates(H: BitMatrix, ref: CycleFreeReference) -> Iterator[Witness]:
    """
    Every vector the constructive argument may produce, unverified.

    Candidates on the pruned reference (punctured coordinates set to 0)
    come first, then candidates on the full reference including its
    degree-1 checks. Within each, checks go in row order and components in
    order of their smallest bit index.
    """
    n = H.n_cols
    pruned = prune_degree_one_checks(ref.matrix)
    if pruned.matrix is not None:
        yield from _candidates_on(
            pruned.matrix, pruned.kept_columns, pruned.kept_rows, n, True
        )
    yield from _candidates_on(
        ref.matrix, tuple(range(n)), tuple(range(ref.matrix.n_rows)), n, False
    )


def construct_witness(
    H: BitMatrix,
    ref: CycleFreeReference,
    component_hint: Optional[int] = None,
    check_applicable: bool = True,
    subset_guard: int = DEFAULT_GUARDS.subset_guard,
) -> Witness:
    """
    Build an irreducible pseudocodeword of H from a pivotal check of ``ref``.

    A candidate is accepted when its pivotal check is not p-satisfied in
    T(H') and the vector is a pseudocodeword of H.

    Args:
        H: parity-check matrix with no cycle-free row subset
        ref: valid cycle-free reference for C(H)
        component_hint: 0-based bit index; only components containing it
            are considered
        check_applicable: run the row-subset search first
        subset_guard: guard for that search

    Raises:
        NotApplicableError: If rows of H can be removed to leave a forest
        ReferenceInvalidError: If ``ref`` is not a valid reference
        WitnessExhaustedError: If no candidate verifies
    """
    validate_reference(H, ref)
    if check_applicable and find_cycle_free_subrepresentation(H, subset_guard) is not None:
        logger.error("witness requested for a matrix that reduces to a forest")
        raise NotApplicableError(
            "rows of the matrix can be removed to leave a forest; it is geometrically perfect"
        )

    G_ref = build_tanner(ref.matrix)
    examined = 0
    for candidate in witness_candidates(H, ref):
        if component_hint is not None and component_hint not in candidate.component:
            continue
        examined += 1
        assert candidate.pivotal_check is not None
        if p_satisfied(G_ref, candidate.pivotal_check, candidate.vector):
            continue
        if is_pseudocodeword(H, candidate.vector):
            logger.info(
                f"Witness found at check f{candidate.pivotal_check + 1} of the "
                f"reference after {examined} candidates"
            )
            return candidate
    logger.error(f"none of {examined} witness candidates verified")
    raise WitnessExhaustedError(
        f"no witness candidate verified among {examined}; "
        f"the input contradicts the construction"
    )


def search_witness(
    H: BitMatrix,
    ref: CycleFreeReference,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> Witness:
    """
    Find a pseudocodeword of H that is not one of ``ref`` by enumeration.

    Bounds grow from 2 to twice the largest check degree of the reference;
    within a bound, vectors go by total weight and then lexicographically.
    The first vector with no reduction certificate over C(H) is returned.

    Raises:
        WitnessExhaustedError: If no such vector exists within the bound
        SearchBudgetExceededError: If an enumeration is too large
    """
    code = null_space_codewords(H, dim_guard)
    top = max(2, 2 * max(ref.matrix.row_weights(), default=1))
    seen: FrozenSet[PseudoVector] = frozenset()
    for bound in range(2, top + 1):
        found = enumerate_pseudocodewords(H, bound, search_budget)
        for p in sorted(found - seen, key=lambda v: (sum(v), v)):
            if is_pseudocodeword(ref.matrix, p):
                continue
            if is_reducible(p, code, search_budget) is None:
                logger.info(f"Searched witness found with entries <= {bound}")
                return Witness(p, None, (), 0, False, "search")
        seen = found
    logger.error(f"no irreducible pseudocodeword with entries <= {top}")
    raise WitnessExhaustedError(
        f"no pseudocodeword of the matrix outside the reference's set with entries <= {top}"
    )


@dataclass(frozen=True)
class PerfectionVerdict:
    reference: CycleFreeReference
    kind: str = field(init=False, default="")

    @property
    def is_perfect(self) -> bool:
        return self.kind == "perfect"


@dataclass(frozen=True)
class Perfect(PerfectionVerdict):
    """Rows ``kept_rows`` of H already form a cycle-free representation."""

    kind: str = field(init=False, default="perfect")
    kept_rows: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Imperfect(PerfectionVerdict):
    """``witness`` is a pseudocodeword of H that no combination of codewords matches."""

    kind: str = field(init=False, default="imperfect")
    witness: Optional[Witness] = None


def _verify_witness(
    H: BitMatrix,
    ref: CycleFreeReference,
    witness: Witness,
    dim_guard: int,
    search_budget: int,
) -> None:
    if not is_pseudocodeword(H, witness.vector):
        raise VerificationError(f"witness {witness.vector} is not a pseudocodeword of the matrix")
    if is_pseudocodeword(ref.matrix, witness.vector):
        raise VerificationError(f"witness {witness.vector} is a pseudocodeword of the reference")
    certificate = is_reducible(witness.vector, null_space_codewords(H, dim_guard), search_budget)
    if certificate is not None:
        logger.error(f"witness reduces over the code: {certificate.to_list()}")
        raise VerificationError(f"witness {witness.vector} is a sum of codewords")


def is_geometrically_perfect(
    H: BitMatrix,
    ref: Optional[CycleFreeReference] = None,
    subset_guard: int = DEFAULT_GUARDS.subset_guard,
    dual_guard: int = DEFAULT_GUARDS.dual_guard,
    search_budget: int = DEFAULT_GUARDS.search_budget,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
) -> PerfectionVerdict:
    """
    Decide whether H is geometrically perfect.

    When the pivotal-check construction yields no witness, the verdict
    falls back to :func:`search_witness`. Every witness is re-checked:
    a pseudocodeword of H, not one of the reference, and with no
    reduction certificate over C(H).

    Args:
        H: parity-check matrix
        ref: cycle-free reference for C(H); discovered when omitted
        subset_guard: guard for the row-subset search
        dual_guard: guard for reference discovery
        search_budget: node budget for searches
        dim_guard: guard for enumerating C(H)

    Returns:
        Perfect with the kept rows, or Imperfect with a verified witness

    Raises:
        OutOfHypothesisError: If C(H) has no cycle-free representation
        ReferenceInvalidError: If a supplied ``ref`` is invalid
        WitnessExhaustedError: If neither construction nor search finds a witness
        VerificationError: If a result fails its re-check
    """
    if ref is None:
        ref = find_cycle_free_representation(H, dual_guard, search_budget)
        if ref is None:
            logger.error("code has no cycle-free representation")
            raise OutOfHypothesisError(
                "the code has no cycle-free representation; no verdict applies"
            )
    validate_reference(H, ref)

    kept = find_cycle_free_subrepresentation(H, subset_guard)
    if kept is not None:
        kept_matrix = H.select_rows(kept)
        if not (row_space_equal(kept_matrix, H) and is_forest(build_tanner(kept_matrix))):
            raise VerificationError(f"rows {[j + 1 for j in kept]} do not form a forest for C(H)")
        return Perfect(ref, kept)

    try:
        witness = construct_witness(H, ref, check_applicable=False)
    except WitnessExhaustedError as e:
        logger.warning(f"{e}; searching for a witness instead")
        witness = search_witness(H, ref, dim_guard, search_budget)
    _verify_witness(H, ref, witness, dim_guard, search_budget)
    return Imperfect(ref, witness)


def verdict_to_dict(verdict: PerfectionVerdict) -> Dict[str, Any]:
    """JSON-ready form with 1-based indices."""
    data: Dict[str, Any] = {
        "verdict": verdict.kind,
        "reference_matrix": verdict.reference.matrix.to_lists(),
        "reference_provenance": verdict.reference.provenance,
    }
    if isinstance(verdict, Perfect):
        data["kept_rows"] = [j + 1 for j in verdict.kept_rows]
    elif isinstance(verdict, Imperfect) and verdict.witness is not None:
        w = verdict.witness
        data["witness"] = list(w.vector)
        data["witness_source"] = w.source
        data["pivotal_check"] = None if w.pivotal_check is None else w.pivotal_check + 1
        data["component"] = [i + 1 for i in w.component]
        data["degree"] = w.degree
        data["pruned"] = w.pruned
    return data


def verdict_from_dict(data: Dict[str, Any]) -> PerfectionVerdict:
    """Inverse of :func:`verdict_to_dict`."""
    ref = CycleFreeReference(
        BitMatrix.from_lists(data["reference_matrix"]),
        data.get("reference_provenance", "user"),
    )
    if data["verdict"] == "perfect":
        return Perfect(ref, tuple(j - 1 for j in data["kept_rows"]))
    pivotal = data.get("pivotal_check")
    witness = Witness(
        tuple(data["witness"]),
        None if pivotal is None else pivotal - 1,
        tuple(i - 1 for i in data["component"]),
        data["degree"],
        bool(data.get("pruned", True)),
        data.get("witness_source", "construction"),
    )
    return Imperfect(ref, witness)


def bit_component_label(component: Tuple[int, ...]) -> str:
    return "{" + ", ".join(f"x{i + 1}" for i in component) + "}"


def describe_nodes(ref: CycleFreeReference, witness: Witness) -> str:
    """One-line description of the pivotal check and its chosen component."""
    if witness.pivotal_check is None:
        return "none (witness found by search)"
    f = check(witness.pivotal_check)
    neighbors = [bit(i) for i in ref.matrix.row_support(witness.pivotal_check)]
    return (
        f"f{f[1] + 1} (degree {witness.degree}, neighbors "
        f"{', '.join(f'x{x[1] + 1}' for x in neighbors)}), "
        f"component {bit_component_label(witness.component)}"
    )
