"""
Tanner graphs of parity-check matrices.

Bit node ``i`` is the networkx node ``("x", i)`` and check node ``j`` is
``("f", j)``; both indices are 0-based. Output labels are 1-based
(``x1``, ``f1``).
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .errors import InvalidParameterError
from .gf2 import BitMatrix, support

logger = logging.getLogger(__name__)

Node = Tuple[str, int]
NodeAssignment = Union[Sequence[int], Mapping[int, int]]


def bit(i: int) -> Node:
    return ("x", i)


def check(j: int) -> Node:
    return ("f", j)


def node_label(node: Node) -> str:
    kind, index = node
    return f"{kind}{index + 1}"


@dataclass(frozen=True)
class TannerGraph:
    """
    Bipartite graph T(H) = (X u F, E) with an edge {x_i, f_j} whenever h_ji = 1.

    The networkx graph is built on first access and never mutated.
    """

    matrix: BitMatrix

    @cached_property
    def graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from((bit(i) for i in range(self.matrix.n_cols)), bipartite=0)
        G.add_nodes_from((check(j) for j in range(self.matrix.n_rows)), bipartite=1)
        for j, row in enumerate(self.matrix.rows):
            G.add_edges_from((check(j), bit(i)) for i in support(row))
        return G

    @property
    def bit_nodes(self) -> List[Node]:
        return [bit(i) for i in range(self.matrix.n_cols)]

    @property
    def check_nodes(self) -> List[Node]:
        return [check(j) for j in range(self.matrix.n_rows)]

    @property
    def num_vertices(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    def neighbors(self, node: Node) -> List[Node]:
        return sorted(self.graph.neighbors(node))

    def biadjacency(self) -> BitMatrix:
        """Read the matrix back from the graph's edges."""
        masks = [0] * self.matrix.n_rows
        for u, v in self.graph.edges():
            f, x = (u, v) if u[0] == "f" else (v, u)
            masks[f[1]] |= 1 << x[1]
        return BitMatrix(tuple(masks), self.matrix.n_cols)


def build_tanner(H: BitMatrix) -> TannerGraph:
    return TannerGraph(H)


def is_forest(G: TannerGraph) -> bool:
    """True iff T(H) has no cycle."""
    return nx.is_forest(G.graph)


def girth(G: TannerGraph) -> Union[int, float]:
    """
    Length of the shortest cycle, or ``math.inf`` for a forest.

    Runs a breadth-first search from every vertex; a non-tree edge met
    between depths d(u) and d(v) closes a cycle of length at most
    d(u) + d(v) + 1, and the minimum over all roots is exact.
    """
    best: Union[int, float] = math.inf
    adjacency = {node: list(G.graph.neighbors(node)) for node in G.graph.nodes}
    for root in adjacency:
        depth = {root: 0}
        parent: Dict[Node, Optional[Node]] = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * depth[u] + 1 >= best:
                break
            for v in adjacency[u]:
                if v not in depth:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, depth[u] + depth[v] + 1)
    return best


def check_degrees(G: TannerGraph) -> List[int]:
    return [G.graph.degree(check(j)) for j in range(G.matrix.n_rows)]


def bit_degrees(G: TannerGraph) -> List[int]:
    return [G.graph.degree(bit(i)) for i in range(G.matrix.n_cols)]


def is_cycle_code(G: TannerGraph) -> bool:
    """Every bit node has degree 2, so checks and bits form a multigraph."""
    return all(d == 2 for d in bit_degrees(G))


def zero_checks(G: TannerGraph) -> List[int]:
    """Rows of H that are all zero (isolated check nodes)."""
    return [j for j, d in enumerate(check_degrees(G)) if d == 0]


def connected_components(
    G: TannerGraph, removed: Optional[Node] = None
) -> List[FrozenSet[Node]]:
    """
    Partition the vertices into maximal connected sets.

    Args:
        G: Tanner graph
        removed: optional vertex deleted before partitioning

    Returns:
        Components sorted by their smallest vertex, for a stable order
    """
    graph = G.graph
    if removed is not None:
        graph = graph.subgraph(n for n in graph.nodes if n != removed)
    components = [frozenset(c) for c in nx.connected_components(graph)]
    return sorted(components, key=min)


def tree_count(G: TannerGraph) -> int:
    """Number of components that contain at least one edge."""
    return sum(1 for c in connected_components(G) if len(c) > 1)


def settling_rounds(G: TannerGraph) -> int:
    """
    Flooding rounds after which every min-sum message on a forest is final.

    A path of e edges starting at a bit node passes ceil(e / 2) check
    nodes, so the largest component diameter D gives ceil(D / 2).
    """
    rounds = 0
    for component in connected_components(G):
        if len(component) > 1:
            diameter = nx.diameter(G.graph.subgraph(component))
            rounds = max(rounds, math.ceil(diameter / 2))
    return rounds


def _values_for(neighbors: List[int], assignment: NodeAssignment) -> List[int]:
    values = []
    for i in neighbors:
        try:
            values.append(int(assignment[i]))
        except (KeyError, IndexError):
            raise InvalidParameterError(f"assignment has no value for bit node x{i + 1}")
    return values


def local_violation(values: Sequence[int]) -> Optional[Tuple[str, Optional[int]]]:
    """
    First broken p-satisfied condition for the neighbor values of one check.

    Returns:
        None when satisfied, else ("negative", k), ("cone", k) or
        ("parity", None), where k indexes ``values``.
    """
    for k, a in enumerate(values):
        if a < 0:
            return ("negative", k)
    total = sum(values)
    for k, a in enumerate(values):
        if 2 * a > total:
            return ("cone", k)
    if total % 2:
        return ("parity", None)
    return None


def p_satisfied(G: TannerGraph, f: int, assignment: NodeAssignment) -> bool:
    """
    Decide whether check node ``f`` is p-satisfied.

    The neighbor values must be nonnegative, have an even sum, and none may
    exceed the sum of the others. A check with no neighbors is satisfied.

    Args:
        G: Tanner graph
        f: 0-based check index
        assignment: value per bit node, as a full vector or a mapping

    Raises:
        InvalidParameterError: If a neighbor of ``f`` has no value
    """
    neighbors = [x[1] for x in G.neighbors(check(f))]
    return local_violation(_values_for(neighbors, assignment)) is None


@dataclass(frozen=True)
class PruneResult:
    """
    Outcome of repeatedly removing degree-1 checks and their bit.

    ``matrix`` is None when every row or every column was pruned.
    """

    matrix: Optional[BitMatrix]
    punctured: Tuple[int, ...]
    kept_rows: Tuple[int, ...]
    kept_columns: Tuple[int, ...]

    @property
    def empty(self) -> bool:
        return self.matrix is None


def prune_degree_one_checks(H: BitMatrix) -> PruneResult:
    """
    Remove degree-1 check rows together with their only bit column, until none remain.

    Returns:
        PruneResult with the reduced matrix (rows and columns renumbered in
        their original order), punctured columns in removal order, and the
        surviving original row and column indices.
    """
    rows = set(range(H.n_rows))
    cols_mask = (1 << H.n_cols) - 1
    punctured: List[int] = []
    changed = True
    while changed:
        changed = False
        for j in sorted(rows):
            active = H.rows[j] & cols_mask
            if active and active & (active - 1) == 0:
                col = active.bit_length() - 1
                rows.discard(j)
                cols_mask &= ~(1 << col)
                punctured.append(col)
                changed = True
                break

    kept_rows = tuple(sorted(rows))
    kept_cols = tuple(support(cols_mask))
    if not kept_rows or not kept_cols:
        logger.debug("pruning removed the whole matrix")
        return PruneResult(None, tuple(punctured), kept_rows, kept_cols)

    masks = []
    for j in kept_rows:
        masks.append(
            sum(1 << k for k, col in enumerate(kept_cols) if (H.rows[j] >> col) & 1)
        )
    return PruneResult(
        BitMatrix(tuple(masks), len(kept_cols)), tuple(punctured), kept_rows, kept_cols
    )


def to_dot(G: TannerGraph, name: str = "tanner") -> str:
    """Graphviz DOT text: bit nodes as circles, check nodes as red squares."""
    lines = [f"graph {name} {{"]
    for node in G.bit_nodes:
        lines.append(f'  {node_label(node)} [shape=circle, style=filled, fillcolor=white];')
    for node in G.check_nodes:
        lines.append(f'  {node_label(node)} [shape=square, style=filled, fillcolor=red];')
    for j in range(G.matrix.n_rows):
        for i in G.matrix.row_support(j):
            lines.append(f"  {node_label(check(j))} -- {node_label(bit(i))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_tree_matrix(
    r: int, n: int, rng: np.random.Generator, max_tries: int = 1000
) -> BitMatrix:
    """
    Sample an r x n matrix whose Tanner graph is a tree with every check degree >= 2.

    Trees are uniform spanning trees of the complete bipartite graph K_{r,n},
    rejected until every check has degree at least 2.

    Raises:
        InvalidParameterError: If no such tree exists (n < r + 1) or sampling
            keeps failing
    """
    if r < 1 or n < r + 1:
        raise InvalidParameterError(f"no tree with {r} checks of degree >= 2 on {n} bits")
    complete = nx.complete_bipartite_graph(r, n)
    for _ in range(max_tries):
        tree = nx.random_spanning_tree(complete, seed=int(rng.integers(2**31)))
        masks = [0] * r
        for u, v in tree.edges():
            f, x = (u, v) if u < r else (v, u)
            masks[f] |= 1 << (x - r)
        if all(bin(m).count("1") >= 2 for m in masks):
            return BitMatrix(tuple(masks), n)
    raise InvalidParameterError(f"could not sample a {r}x{n} tree in {max_tries} tries")


def random_forest_matrix(
    sizes: Sequence[Tuple[int, int]], rng: np.random.Generator
) -> BitMatrix:
    """Block-diagonal union of random trees, one per (r, n) in ``sizes``."""
    masks: List[int] = []
    offset = 0
    for r, n in sizes:
        block = random_tree_matrix(r, n, rng)
        masks.extend(row << offset for row in block.rows)
        offset += n
    return BitMatrix(tuple(masks), offset)
