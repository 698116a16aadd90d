"""
Algebraic pseudocodeword tests, bounded enumeration and reducibility.

An integer vector p is a pseudocodeword of H exactly when it lies in the
fundamental cone K(H) and every row has an even weighted sum
(H p^T = 0 mod 2). Both that formulation and the local p-satisfied
formulation on the Tanner graph are implemented so they can be
cross-checked.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import (
    Any,
    Collection,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from .config import DEFAULT_GUARDS
from .errors import DimensionMismatchError, InvalidParameterError, SearchBudgetExceededError
from .gf2 import BitMatrix, Codeword, null_space_basis, null_space_codewords, span, support
from .tanner import build_tanner, p_satisfied

logger = logging.getLogger(__name__)

PseudoVector = Tuple[int, ...]


def _require_length(H: BitMatrix, v: Sequence[Any]) -> None:
    if len(v) != H.n_cols:
        logger.error(f"vector of length {len(v)} given for {H.n_cols} columns")
        raise DimensionMismatchError(
            f"vector has length {len(v)}, matrix has {H.n_cols} columns"
        )


def as_pseudo_vector(values: Iterable[Any]) -> PseudoVector:
    """
    Convert ``values`` to a tuple of Python ints.

    Raises:
        InvalidParameterError: If an entry is not integral
    """
    result = []
    for k, value in enumerate(values):
        try:
            as_int = int(value)
        except (TypeError, ValueError):
            raise InvalidParameterError(f"entry {k + 1} ({value!r}) is not an integer")
        if as_int != value:
            raise InvalidParameterError(f"entry {k + 1} ({value!r}) is not an integer")
        result.append(as_int)
    return tuple(result)


def parse_vector(text: str) -> PseudoVector:
    """Read the space-separated text form, e.g. ``"2 2 8 8"``."""
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise InvalidParameterError(f"cannot read integer vector from {text!r}")


def format_vector(p: Sequence[int]) -> str:
    return " ".join(str(int(x)) for x in p)


def _scaled_integers(v: Sequence[Any]) -> List[int]:
    fractions = [Fraction(value) for value in v]
    scale = lcm(*(f.denominator for f in fractions)) if fractions else 1
    return [int(f * scale) for f in fractions]


def in_fundamental_cone(H: BitMatrix, v: Sequence[Any]) -> bool:
    """
    Test membership in the fundamental cone K(H).

    Entries may be ints, Fractions or floats; the test is carried out on
    integers after clearing denominators, so it is exact.

    Args:
        H: parity-check matrix
        v: candidate vector of length n

    Returns:
        True iff v is nonnegative and, in every row, no participating
        coordinate exceeds the sum of the row's other participating coordinates

    Raises:
        DimensionMismatchError: If ``len(v) != n``
    """
    _require_length(H, v)
    w = _scaled_integers(v)
    if any(x < 0 for x in w):
        return False
    for row in H.rows:
        cols = support(row)
        total = sum(w[i] for i in cols)
        if any(2 * w[i] > total for i in cols):
            return False
    return True


@dataclass(frozen=True)
class Violation:
    """
    First constraint a vector breaks.

    Attributes:
        kind: "negative", "cone" or "parity"
        row: 0-based row index (None for a negative entry)
        position: 0-based column index (None for a parity failure)
    """

    kind: str
    row: Optional[int]
    position: Optional[int]

    def describe(self) -> str:
        row = "-" if self.row is None else self.row + 1
        position = "-" if self.position is None else self.position + 1
        if self.kind == "negative":
            return f"entry {position} is negative"
        if self.kind == "cone":
            return (
                f"row {row}: entry {position} exceeds the sum of "
                f"the other entries in the row"
            )
        return f"row {row}: weighted sum is odd"


def find_violation(H: BitMatrix, p: Sequence[int]) -> Optional[Violation]:
    """
    Locate the first failed pseudocodeword condition, scanning rows in order.

    Within a row the cone inequalities are checked before parity.

    Raises:
        DimensionMismatchError: If ``len(p) != n``
        InvalidParameterError: If ``p`` has non-integer entries
    """
    _require_length(H, p)
    vec = as_pseudo_vector(p)
    for i, value in enumerate(vec):
        if value < 0:
            return Violation("negative", None, i)
    for j, row in enumerate(H.rows):
        cols = support(row)
        total = sum(vec[i] for i in cols)
        for i in cols:
            if 2 * vec[i] > total:
                return Violation("cone", j, i)
        if total % 2:
            return Violation("parity", j, None)
    return None


def is_pseudocodeword(H: BitMatrix, p: Sequence[int]) -> bool:
    """True iff ``p`` lies in K(H) and H p^T = 0 (mod 2)."""
    return find_violation(H, p) is None


def is_pseudocodeword_local(H: BitMatrix, p: Sequence[int]) -> bool:
    """True iff ``p`` makes every check node of T(H) p-satisfied."""
    _require_length(H, p)
    vec = as_pseudo_vector(p)
    G = build_tanner(H)
    return all(p_satisfied(G, j, vec) for j in range(H.n_rows))


def _column_order(H: BitMatrix) -> List[int]:
    """Columns of light rows first, so rows close early in the search."""
    order: List[int] = []
    seen: Set[int] = set()
    for j in sorted(range(H.n_rows), key=lambda j: (bin(H.rows[j]).count("1"), j)):
        for i in support(H.rows[j]):
            if i not in seen:
                seen.add(i)
                order.append(i)
    order.extend(i for i in range(H.n_cols) if i not in seen)
    return order


def enumerate_pseudocodewords(
    H: BitMatrix, bound: int, search_budget: int = DEFAULT_GUARDS.search_budget
) -> FrozenSet[PseudoVector]:
    """
    All pseudocodewords of H with every entry in [0, bound].

    Depth-first over coordinates. A row is tested in full once its last
    coordinate is assigned; before that, a partial row is pruned when some
    assigned entry could never be covered by the rest of the row even if
    every unassigned entry took the value ``bound``.

    Args:
        H: parity-check matrix
        bound: largest entry value
        search_budget: largest number of search nodes visited

    Returns:
        Frozen set of the pseudocodewords found

    Raises:
        InvalidParameterError: If ``bound`` is negative
        SearchBudgetExceededError: If the search visits more than
            ``search_budget`` nodes; ``partial`` holds what was found so far
    """
    if bound < 0:
        raise InvalidParameterError(f"bound must be >= 0, got {bound}")
    n = H.n_cols
    order = _column_order(H)
    position = {col: pos for pos, col in enumerate(order)}
    row_cols = [support(row) for row in H.rows]
    closes_at = [max((position[i] for i in cols), default=-1) for cols in row_cols]
    rows_at: List[List[int]] = [[] for _ in range(n)]
    for j, cols in enumerate(row_cols):
        for i in cols:
            rows_at[position[i]].append(j)

    values = [0] * n
    found: Set[PseudoVector] = set()
    nodes = 0

    def row_status(j: int, pos: int, col: int) -> str:
        assigned = [i for i in row_cols[j] if position[i] <= pos]
        remaining = len(row_cols[j]) - len(assigned)
        total = sum(values[i] for i in assigned)
        ceiling = total + bound * remaining
        if 2 * values[col] > ceiling:
            return "too_big"
        if any(2 * values[i] > ceiling for i in assigned):
            return "fail"
        if closes_at[j] == pos and total % 2:
            return "fail"
        return "ok"

    def descend(pos: int) -> None:
        nonlocal nodes
        if pos == n:
            found.add(tuple(values))
            return
        col = order[pos]
        for v in range(bound + 1):
            nodes += 1
            if nodes > search_budget:
                logger.error(f"pseudocodeword search exceeded {search_budget} nodes")
                raise SearchBudgetExceededError(
                    "search budget", search_budget, nodes, partial=frozenset(found)
                )
            values[col] = v
            statuses = [row_status(j, pos, col) for j in rows_at[pos]]
            if "too_big" in statuses:
                break
            if "fail" not in statuses:
                descend(pos + 1)
        values[col] = 0

    descend(0)
    logger.info(f"Found {len(found)} pseudocodewords with entries <= {bound}")
    logger.debug(f"enumeration visited {nodes} nodes")
    return frozenset(found)


@dataclass
class ReductionCertificate:
    """
    Nonnegative integer coefficients a_c with sum(a_c * c) = p.

    Codewords absent from ``coefficients`` have coefficient 0; the zero
    vector is certified by an empty map.
    """

    coefficients: Dict[Codeword, int] = field(default_factory=dict)

    def total(self, n: int) -> PseudoVector:
        acc = [0] * n
        for c, a in self.coefficients.items():
            for i, bit in enumerate(c):
                acc[i] += a * bit
        return tuple(acc)

    def verify(self, p: Sequence[int]) -> bool:
        return all(a >= 0 for a in self.coefficients.values()) and self.total(
            len(p)
        ) == tuple(p)

    def to_list(self) -> List[Dict[str, Any]]:
        return [
            {"codeword": format_vector(c), "coefficient": a}
            for c, a in sorted(self.coefficients.items())
        ]


def _dual_rows(codewords: Collection[Codeword], n: int, dual_guard: int) -> List[int]:
    """Nonzero vectors orthogonal to every codeword, or [] when too many."""
    nonzero = [c for c in codewords if any(c)]
    if not nonzero:
        return [(1 << i) for i in range(n)]
    G = BitMatrix.from_lists([list(c) for c in nonzero])
    basis = null_space_basis(G)
    if len(basis) > dual_guard:
        logger.debug("dual code too large for the cone prune; skipping it")
        return []
    return [w for w in span(basis) if w]


def _cone_ok(rem: Sequence[int], dual_rows: List[int]) -> bool:
    for row in dual_rows:
        cols = support(row)
        total = sum(rem[i] for i in cols)
        if any(2 * rem[i] > total for i in cols):
            return False
    return True


def decompose(
    p: Sequence[int],
    generators: Iterable[Sequence[int]],
    search_budget: int = DEFAULT_GUARDS.search_budget,
    binary_code: bool = False,
    dual_guard: int = DEFAULT_GUARDS.dual_guard,
) -> Optional[Dict[PseudoVector, int]]:
    """
    Write ``p`` as a nonnegative integer combination of ``generators``.

    Each step subtracts a generator that covers the first nonzero entry of
    the remainder; failed remainders are memoized. With ``binary_code`` the
    generators must form a whole binary linear code, and every remainder
    must reduce mod 2 to a codeword and lie in the fundamental cone of the
    dual code.

    Returns:
        Coefficient map, or None when no combination exists

    Raises:
        SearchBudgetExceededError: If more than ``search_budget`` remainders
            are examined
    """
    target = as_pseudo_vector(p)
    n = len(target)
    gens = sorted(
        {tuple(int(x) for x in g) for g in generators if any(g)},
        key=lambda g: (-sum(g), g),
    )
    for g in gens:
        if len(g) != n:
            raise DimensionMismatchError(f"generator of length {len(g)} for length {n}")
    code: Set[PseudoVector] = set()
    dual: List[int] = []
    if binary_code:
        code = set(gens) | {tuple([0] * n)}
        dual = _dual_rows(gens, n, dual_guard)

    failed: Set[PseudoVector] = set()
    nodes = 0

    def feasible(rem: PseudoVector) -> bool:
        if not binary_code:
            return True
        return tuple(x % 2 for x in rem) in code and _cone_ok(rem, dual)

    def search(rem: PseudoVector) -> Optional[List[PseudoVector]]:
        nonlocal nodes
        first = next((i for i, x in enumerate(rem) if x), None)
        if first is None:
            return []
        if rem in failed:
            return None
        nodes += 1
        if nodes > search_budget:
            logger.error(f"reducibility search exceeded {search_budget} nodes")
            raise SearchBudgetExceededError("search budget", search_budget, nodes)
        for g in gens:
            if not g[first] or any(gi > ri for gi, ri in zip(g, rem)):
                continue
            nxt = tuple(ri - gi for ri, gi in zip(rem, g))
            if not feasible(nxt):
                continue
            rest = search(nxt)
            if rest is not None:
                return [g] + rest
        failed.add(rem)
        return None

    if any(x < 0 for x in target) or not feasible(target):
        return None
    parts = search(target)
    if parts is None:
        return None
    combination: Dict[PseudoVector, int] = {}
    for g in parts:
        combination[g] = combination.get(g, 0) + 1
    return combination


def is_reducible(
    p: Sequence[int],
    codewords: Collection[Codeword],
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> Optional[ReductionCertificate]:
    """
    Decide whether ``p`` is a nonnegative integer combination of codewords.

    Args:
        p: candidate vector
        codewords: the whole code C(H), as enumerated by
            :func:`pcw_analyzer.gf2.null_space_codewords`
        search_budget: largest number of remainders examined

    Returns:
        A ReductionCertificate, or None when no combination exists

    Raises:
        SearchBudgetExceededError: If the search is too large
    """
    combination = decompose(p, codewords, search_budget, binary_code=True)
    if combination is None:
        return None
    return ReductionCertificate(dict(combination))


def irreducible_pseudocodewords(
    H: BitMatrix,
    bound: int,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> FrozenSet[PseudoVector]:
    """Pseudocodewords with entries <= ``bound`` that have no reduction certificate."""
    candidates = enumerate_pseudocodewords(H, bound, search_budget)
    code = null_space_codewords(H, dim_guard)
    irreducible = frozenset(
        p for p in candidates if p not in code and is_reducible(p, code, search_budget) is None
    )
    logger.info(f"{len(irreducible)} of {len(candidates)} pseudocodewords are irreducible")
    return irreducible


def indecomposable_pseudocodewords(
    H: BitMatrix, bound: int, search_budget: int = DEFAULT_GUARDS.search_budget
) -> FrozenSet[PseudoVector]:
    """
    Nonzero pseudocodewords (entries <= bound) that are not a sum of two
    nonzero pseudocodewords.
    """
    pcs = enumerate_pseudocodewords(H, bound, search_budget)
    nonzero = sorted(p for p in pcs if any(p))
    result = set()
    for p in nonzero:
        split = False
        for q in nonzero:
            if q == p or any(qi > pi for qi, pi in zip(q, p)):
                continue
            if tuple(pi - qi for pi, qi in zip(p, q)) in pcs:
                split = True
                break
        if not split:
            result.add(p)
    return frozenset(result)


def extraneous_generators(
    H: BitMatrix,
    bound: int,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> FrozenSet[PseudoVector]:
    """Indecomposable pseudocodewords that are not combinations of codewords."""
    code = null_space_codewords(H, dim_guard)
    return frozenset(
        p
        for p in indecomposable_pseudocodewords(H, bound, search_budget)
        if p not in code and is_reducible(p, code, search_budget) is None
    )


def check_report(
    H: BitMatrix,
    p: Sequence[int],
    codewords: Optional[Collection[Codeword]] = None,
    search_budget: int = DEFAULT_GUARDS.search_budget,
) -> Dict[str, Any]:
    """
    JSON-ready verdict for one vector (1-based row and position).

    When ``codewords`` is given and ``p`` passes, the report also carries a
    reduction certificate, or None when ``p`` is irreducible.
    """
    violation = find_violation(H, p)
    report: Dict[str, Any] = {
        "vector": list(as_pseudo_vector(p)),
        "is_pseudocodeword": violation is None,
        "violation": violation.kind if violation else None,
        "failing_row": violation.row + 1 if violation and violation.row is not None else None,
        "failing_position": (
            violation.position + 1 if violation and violation.position is not None else None
        ),
    }
    if violation is None and codewords is not None:
        certificate = is_reducible(p, codewords, search_budget)
        report["reducible"] = certificate is not None
        report["certificate"] = certificate.to_list() if certificate else None
    return report
