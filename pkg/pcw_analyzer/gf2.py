"""
Binary linear algebra over GF(2).

Rows are stored bit-packed in Python integers: bit ``i`` of a row is the
entry in column ``i`` (0-based). Every function here is pure.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_GUARDS
from .errors import DimensionMismatchError, GuardExceededError, InvalidParameterError

logger = logging.getLogger(__name__)

Codeword = Tuple[int, ...]
BinaryVector = Union[int, Sequence[int]]


def bits_to_mask(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an integer, entry ``i`` at bit ``i``."""
    mask = 0
    for i, bit in enumerate(bits):
        if bit not in (0, 1):
            raise InvalidParameterError(f"entry {i} is {bit!r}, expected 0 or 1")
        if bit:
            mask |= 1 << i
    return mask


def mask_to_bits(mask: int, n: int) -> Codeword:
    return tuple((mask >> i) & 1 for i in range(n))


def support(mask: int) -> List[int]:
    """Column indices of the ones in ``mask``, ascending."""
    cols = []
    while mask:
        low = mask & -mask
        cols.append(low.bit_length() - 1)
        mask ^= low
    return cols


@dataclass(frozen=True)
class BitMatrix:
    """
    Dense binary r x n matrix, immutable after construction.

    Attributes:
        rows: one bit-packed integer per row
        n_cols: number of columns n
    """

    rows: Tuple[int, ...]
    n_cols: int

    def __post_init__(self) -> None:
        if len(self.rows) < 1 or self.n_cols < 1:
            raise InvalidParameterError(
                f"matrix must have at least one row and one column, "
                f"got {len(self.rows)}x{self.n_cols}"
            )
        limit = 1 << self.n_cols
        for j, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise InvalidParameterError(
                    f"row {j + 1} does not fit in {self.n_cols} columns"
                )

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        if not rows:
            raise InvalidParameterError("matrix must have at least one row")
        width = len(rows[0])
        for j, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatchError(
                    f"row {j + 1} has {len(row)} entries, expected {width}"
                )
        return cls(tuple(bits_to_mask(row) for row in rows), width)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "BitMatrix":
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-D array, got {arr.ndim}-D")
        return cls.from_lists(arr.astype(int).tolist())

    @classmethod
    def from_masks(cls, masks: Iterable[int], n_cols: int) -> "BitMatrix":
        return cls(tuple(masks), n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def entry(self, j: int, i: int) -> int:
        return (self.rows[j] >> i) & 1

    def row_bits(self, j: int) -> Codeword:
        return mask_to_bits(self.rows[j], self.n_cols)

    def row_support(self, j: int) -> List[int]:
        return support(self.rows[j])

    def row_weights(self) -> List[int]:
        return [hamming_weight(row) for row in self.rows]

    def ones(self) -> int:
        return sum(self.row_weights())

    def select_rows(self, indices: Iterable[int]) -> "BitMatrix":
        return BitMatrix(tuple(self.rows[j] for j in indices), self.n_cols)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        _require_same_width(self, other)
        return BitMatrix(self.rows + other.rows, self.n_cols)

    def to_lists(self) -> List[List[int]]:
        return [list(self.row_bits(j)) for j in range(self.n_rows)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8)

    def syndrome(self, word: BinaryVector) -> Codeword:
        mask = _as_mask(word, self.n_cols)
        return tuple(hamming_weight(row & mask) & 1 for row in self.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, self.row_bits(j))) for j in range(self.n_rows))


def _require_same_width(a: BitMatrix, b: BitMatrix) -> None:
    if a.n_cols != b.n_cols:
        raise DimensionMismatchError(
            f"matrices have {a.n_cols} and {b.n_cols} columns"
        )


def _as_mask(v: BinaryVector, n: int) -> int:
    if isinstance(v, int):
        return v
    if len(v) != n:
        raise DimensionMismatchError(f"vector has length {len(v)}, expected {n}")
    return bits_to_mask(v)


def _echelon(vectors: Iterable[int]) -> Dict[int, int]:
    """Echelon basis keyed by leading (highest) bit."""
    pivots: Dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                break
    return pivots


def _reduce(v: int, pivots: Dict[int, int]) -> int:
    while v:
        top = v.bit_length() - 1
        if top not in pivots:
            return v
        v ^= pivots[top]
    return 0


def _rref(rows: Iterable[int]) -> List[Tuple[int, int]]:
    """
    Reduced row echelon form as ``(pivot_column, row)`` pairs.

    Each pivot column is set in exactly one returned row.
    """
    reduced: List[Tuple[int, int]] = []
    for v in rows:
        for col, row in reduced:
            if (v >> col) & 1:
                v ^= row
        if not v:
            continue
        col = (v & -v).bit_length() - 1
        reduced = [(c, r ^ v) if (r >> col) & 1 else (c, r) for c, r in reduced]
        reduced.append((col, v))
    return reduced


def rank(H: BitMatrix) -> int:
    """GF(2) rank of ``H``."""
    return len(_echelon(H.rows))


def in_row_space(H: BitMatrix, v: BinaryVector) -> bool:
    return _reduce(_as_mask(v, H.n_cols), _echelon(H.rows)) == 0


def null_space_basis(H: BitMatrix) -> List[int]:
    """
    Basis of C(H) as bit masks, one vector per free column.

    Returns:
        ``n - rank(H)`` linearly independent masks spanning the null space.
    """
    reduced = _rref(H.rows)
    pivot_cols = {col for col, _ in reduced}
    basis = []
    for free in range(H.n_cols):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, row in reduced:
            if (row >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def span(basis: Sequence[int]) -> List[int]:
    """All 2^k GF(2) combinations of ``basis``, zero first."""
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return words


def _check_dimension(dim: int, guard: int, name: str) -> None:
    if dim > guard:
        logger.error(f"{name} {dim} exceeds guard {guard}")
        raise GuardExceededError(name, guard, dim)


def codeword_masks(H: BitMatrix, dim_guard: int = DEFAULT_GUARDS.dim_guard) -> List[int]:
    """Every codeword of C(H) as a bit mask, in ascending mask order."""
    basis = null_space_basis(H)
    _check_dimension(len(basis), dim_guard, "code dimension")
    return sorted(span(basis))


def null_space_codewords(
    H: BitMatrix, dim_guard: int = DEFAULT_GUARDS.dim_guard
) -> FrozenSet[Codeword]:
    """
    Enumerate the code C(H) = {y : H y^T = 0}.

    Args:
        H: parity-check matrix
        dim_guard: largest dimension n - rank(H) that may be enumerated

    Returns:
        Frozen set of the 2^(n - rank(H)) codewords as 0/1 tuples

    Raises:
        GuardExceededError: If the dimension exceeds ``dim_guard``
    """
    words = codeword_masks(H, dim_guard)
    logger.debug(f"enumerated {len(words)} codewords of length {H.n_cols}")
    return frozenset(mask_to_bits(w, H.n_cols) for w in words)


def row_space_vectors(
    H: BitMatrix, dim_guard: int = DEFAULT_GUARDS.dual_guard
) -> List[int]:
    """Every vector of the row space of ``H`` (the dual code) as masks."""
    basis = list(_echelon(H.rows).values())
    _check_dimension(len(basis), dim_guard, "row space dimension")
    return sorted(span(basis))


def row_space_equal(A: BitMatrix, B: BitMatrix) -> bool:
    """
    True iff ``A`` and ``B`` have the same row space, equivalently C(A) = C(B).

    Raises:
        DimensionMismatchError: If the column counts differ
    """
    _require_same_width(A, B)
    rank_a = rank(A)
    return rank_a == rank(B) == len(_echelon(A.rows + B.rows))


def hamming_weight(v: BinaryVector) -> int:
    if isinstance(v, int):
        return bin(v).count("1")
    return sum(1 for bit in v if bit)


def row_sum(H: BitMatrix, indices: Iterable[int]) -> Codeword:
    """
    GF(2) sum of the selected rows.

    Args:
        H: matrix
        indices: nonempty collection of 0-based row indices

    Raises:
        InvalidParameterError: If ``indices`` is empty or out of range
    """
    chosen = set(indices)
    if not chosen:
        raise InvalidParameterError("row_sum needs at least one row index")
    total = 0
    for j in chosen:
        if not 0 <= j < H.n_rows:
            raise InvalidParameterError(
                f"row index {j} out of range for {H.n_rows} rows"
            )
        total ^= H.rows[j]
    return mask_to_bits(total, H.n_cols)

