"""
Finite-degree covers of Tanner graphs and the pseudocodewords they carry.

A degree-m cover is fixed by one permutation of {0, ..., m-1} per edge of
T(H). Edges are indexed row-major: every (j, i) with h_ji = 1, ordered by
row j and then by column i. For the edge (j, i) with permutation ``perm``,
copy k of bit node x_i is joined to copy ``perm[k]`` of check node f_j.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Set, Tuple

import networkx as nx

from .config import DEFAULT_GUARDS
from .errors import InvalidParameterError, MatrixFormatError
from .gf2 import BitMatrix, codeword_masks, support
from .tanner import bit, build_tanner, check

logger = logging.getLogger(__name__)

PseudoVector = Tuple[int, ...]
Edge = Tuple[int, int]


def base_edges(H: BitMatrix) -> List[Edge]:
    """Edges (j, i) of T(H) in the row-major order used to index permutations."""
    return [(j, i) for j, row in enumerate(H.rows) for i in support(row)]


@dataclass(frozen=True)
class CoverSpec:
    """
    A degree-m lift of T(base).

    Attributes:
        base: the parity-check matrix being covered
        degree: the cover degree m >= 1
        edge_perms: one permutation per edge of T(base), in row-major edge order
    """

    base: BitMatrix
    degree: int
    edge_perms: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InvalidParameterError(f"cover degree must be >= 1, got {self.degree}")
        edges = base_edges(self.base)
        if len(self.edge_perms) != len(edges):
            raise InvalidParameterError(
                f"expected {len(edges)} edge permutations, got {len(self.edge_perms)}"
            )
        identity = list(range(self.degree))
        for (j, i), perm in zip(edges, self.edge_perms):
            if sorted(perm) != identity:
                raise InvalidParameterError(
                    f"edge f{j + 1}-x{i + 1}: {perm} is not a permutation of "
                    f"{self.degree} copies"
                )

    @classmethod
    def identity(cls, base: BitMatrix, degree: int) -> "CoverSpec":
        """m disjoint copies of T(base)."""
        perm = tuple(range(degree))
        return cls(base, degree, tuple(perm for _ in base_edges(base)))


def lift_matrix(spec: CoverSpec) -> BitMatrix:
    """
    Parity-check matrix of the cover, of size (r*m) x (n*m).

    Column block i*m .. i*m+m-1 holds the copies of bit x_i and row block
    j*m .. j*m+m-1 the copies of check f_j.
    """
    m = spec.degree
    masks = [0] * (spec.base.n_rows * m)
    for (j, i), perm in zip(base_edges(spec.base), spec.edge_perms):
        for k in range(m):
            masks[j * m + perm[k]] |= 1 << (i * m + k)
    return BitMatrix(tuple(masks), spec.base.n_cols * m)


def _fiber_sums(word: int, n: int, m: int) -> PseudoVector:
    block = (1 << m) - 1
    return tuple(bin((word >> (i * m)) & block).count("1") for i in range(n))


def cover_pseudocodewords(
    spec: CoverSpec, dim_guard: int = DEFAULT_GUARDS.dim_guard
) -> FrozenSet[PseudoVector]:
    """
    Fiber sums of every legitimate assignment on the cover.

    Args:
        spec: the cover
        dim_guard: largest null-space dimension of the lifted matrix to enumerate

    Returns:
        Frozen set of pseudocodewords, every entry in [0, m]

    Raises:
        GuardExceededError: If the lifted code is too large to enumerate
    """
    words = codeword_masks(lift_matrix(spec), dim_guard)
    return frozenset(_fiber_sums(w, spec.base.n_cols, spec.degree) for w in words)


def disjoint_union(a: CoverSpec, b: CoverSpec) -> CoverSpec:
    """Cover of degree m_a + m_b made of ``a`` and ``b`` side by side."""
    if a.base != b.base:
        raise InvalidParameterError("covers of different matrices cannot be joined")
    shift = a.degree
    perms = tuple(
        tuple(pa) + tuple(shift + k for k in pb)
        for pa, pb in zip(a.edge_perms, b.edge_perms)
    )
    return CoverSpec(a.base, a.degree + b.degree, perms)


def spanning_tree_edges(H: BitMatrix) -> Set[int]:
    """Indices (in row-major edge order) of a breadth-first spanning forest of T(H)."""
    G = build_tanner(H).graph
    index = {(check(j), bit(i)): e for e, (j, i) in enumerate(base_edges(H))}
    tree: Set[int] = set()
    for component in nx.connected_components(G):
        for u, v in nx.bfs_edges(G, source=min(component)):
            key = (u, v) if u[0] == "f" else (v, u)
            tree.add(index[key])
    return tree


def count_cover_specs(H: BitMatrix, degree: int) -> int:
    free = len(base_edges(H)) - len(spanning_tree_edges(H))
    return math.factorial(degree) ** free


def enumerate_cover_specs(H: BitMatrix, degree: int) -> Iterator[CoverSpec]:
    """
    Every degree-``degree`` cover up to relabelling the copies at each vertex.

    Permutations on a spanning forest are fixed to the identity; any cover
    can be relabelled into this form, and relabelling leaves fiber sums
    unchanged.
    """
    edges = base_edges(H)
    tree = spanning_tree_edges(H)
    identity = tuple(range(degree))
    free = [e for e in range(len(edges)) if e not in tree]
    all_perms = list(itertools.permutations(range(degree)))
    for choice in itertools.product(all_perms, repeat=len(free)):
        perms = [identity] * len(edges)
        for e, perm in zip(free, choice):
            perms[e] = perm
        yield CoverSpec(H, degree, tuple(perms))


@dataclass(frozen=True)
class OracleResult:
    """
    Pseudocodewords realized by exhaustive cover search.

    ``complete`` is False when the budget stopped the search early; the
    vectors found so far are still genuine pseudocodewords.
    """

    vectors: FrozenSet[PseudoVector]
    complete: bool
    specs_examined: int
    max_degree: int


def oracle_pc_set(
    H: BitMatrix,
    m_max: int,
    dim_guard: int = DEFAULT_GUARDS.dim_guard,
    cover_budget: int = DEFAULT_GUARDS.cover_budget,
) -> OracleResult:
    """
    Union of cover pseudocodewords over every cover of degree 1..m_max.

    Args:
        H: parity-check matrix
        m_max: largest cover degree searched
        dim_guard: guard for each lifted null space
        cover_budget: largest number of covers examined

    Returns:
        OracleResult; ``complete`` tells whether every cover was examined
    """
    if m_max < 1:
        raise InvalidParameterError(f"m_max must be >= 1, got {m_max}")
    found: Set[PseudoVector] = set()
    examined = 0
    for m in range(1, m_max + 1):
        logger.debug(f"searching {count_cover_specs(H, m)} covers of degree {m}")
        for spec in enumerate_cover_specs(H, m):
            if examined >= cover_budget:
                logger.warning(
                    f"Cover budget {cover_budget} reached at degree {m}; "
                    f"returning partial results"
                )
                return OracleResult(frozenset(found), False, examined, m_max)
            found |= cover_pseudocodewords(spec, dim_guard)
            examined += 1
    logger.info(f"Oracle examined {examined} covers and found {len(found)} vectors")
    return OracleResult(frozenset(found), True, examined, m_max)


def format_cover_spec(spec: CoverSpec) -> str:
    """Text form: ``m = <degree>`` then ``edge j i : images`` (all 1-based)."""
    lines = [f"m = {spec.degree}"]
    for (j, i), perm in zip(base_edges(spec.base), spec.edge_perms):
        lines.append(f"edge {j + 1} {i + 1} : {' '.join(str(k + 1) for k in perm)}")
    return "\n".join(lines) + "\n"


def parse_cover_spec(text: str, base: BitMatrix) -> CoverSpec:
    """
    Inverse of :func:`format_cover_spec`.

    Raises:
        MatrixFormatError: If a line is malformed or edges are out of order
    """
    lines = [(k, ln.strip()) for k, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines or not lines[0][1].replace(" ", "").startswith("m="):
        raise MatrixFormatError("cover spec must start with 'm = <degree>'", 1)
    try:
        degree = int(lines[0][1].split("=", 1)[1])
    except ValueError:
        raise MatrixFormatError("cover degree must be an integer", lines[0][0])

    edges = base_edges(base)
    if len(lines) - 1 != len(edges):
        raise MatrixFormatError(
            f"expected {len(edges)} edge lines, found {len(lines) - 1}", lines[-1][0]
        )
    perms: List[Tuple[int, ...]] = []
    for (number, line), (j, i) in zip(lines[1:], edges):
        head, _, images = line.partition(":")
        parts = head.split()
        try:
            if parts[0] != "edge" or (int(parts[1]), int(parts[2])) != (j + 1, i + 1):
                raise MatrixFormatError(f"expected 'edge {j + 1} {i + 1}'", number)
            perms.append(tuple(int(k) - 1 for k in images.split()))
        except (IndexError, ValueError):
            raise MatrixFormatError(f"malformed edge line {line!r}", number)
    try:
        return CoverSpec(base, degree, tuple(perms))
    except InvalidParameterError as e:
        raise MatrixFormatError(str(e))
