"""
Reading and writing parity-check matrices in dense and alist text formats.
"""

import logging
from pathlib import Path
from typing import List, Set, Tuple

from .errors import MatrixFormatError
from .gf2 import BitMatrix, support

logger = logging.getLogger(__name__)

FORMATS = ("auto", "dense", "alist")


def _numbered_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-blank lines as (1-based line number, tokens); ``#`` starts a comment."""
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            lines.append((number, tokens))
    return lines


def _ints(tokens: List[str], number: int) -> List[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise MatrixFormatError(f"expected integers, got {' '.join(tokens)!r}", number)


def parse_dense(text: str) -> BitMatrix:
    """
    Parse the dense format: a header ``r n`` then r rows of n 0/1 entries.

    Args:
        text: file contents

    Returns:
        The parsed matrix

    Raises:
        MatrixFormatError: If the header or any row is malformed
    """
    lines = _numbered_lines(text)
    if not lines:
        raise MatrixFormatError("empty matrix file", 1)
    number, header = lines[0]
    dims = _ints(header, number)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise MatrixFormatError("header must be two positive integers 'r n'", number)
    r, n = dims
    body = lines[1:]
    if len(body) != r:
        last = body[-1][0] if body else number
        raise MatrixFormatError(f"expected {r} rows, found {len(body)}", last)

    rows = []
    for number, tokens in body:
        if len(tokens) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(tokens)}", number)
        if any(tok not in ("0", "1") for tok in tokens):
            raise MatrixFormatError("entries must be 0 or 1", number)
        rows.append([int(tok) for tok in tokens])
    return BitMatrix.from_lists(rows)


def parse_alist(text: str) -> BitMatrix:
    """
    Parse the alist sparse format (1-based neighbor lists, zero padding allowed).

    The layout is: ``n m``; ``max_col_degree max_row_degree``; n column
    degrees; m row degrees; n column neighbor lists; m row neighbor lists.
    Column and row lists must describe the same set of ones.

    Raises:
        MatrixFormatError: If the file is truncated or inconsistent
    """
    lines = _numbered_lines(text)
    if len(lines) < 4:
        last = lines[-1][0] if lines else 1
        raise MatrixFormatError("alist file needs at least four header lines", last)

    (l0, t0), (l1, t1), (l2, t2), (l3, t3) = lines[:4]
    dims = _ints(t0, l0)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise MatrixFormatError("first line must be two positive integers 'n m'", l0)
    n, m = dims
    if len(_ints(t1, l1)) != 2:
        raise MatrixFormatError("second line must hold the two maximum degrees", l1)
    col_degrees = _ints(t2, l2)
    row_degrees = _ints(t3, l3)
    if len(col_degrees) != n:
        raise MatrixFormatError(f"expected {n} column degrees", l2)
    if len(row_degrees) != m:
        raise MatrixFormatError(f"expected {m} row degrees", l3)
    if len(lines) < 4 + n + m:
        raise MatrixFormatError(
            f"expected {n} column lists and {m} row lists", lines[-1][0]
        )

    from_cols: Set[Tuple[int, int]] = set()
    for col, (number, tokens) in enumerate(lines[4 : 4 + n]):
        entries = [e for e in _ints(tokens, number) if e != 0]
        if len(entries) != col_degrees[col]:
            raise MatrixFormatError(
                f"column {col + 1} lists {len(entries)} rows, degree says "
                f"{col_degrees[col]}",
                number,
            )
        for e in entries:
            if not 1 <= e <= m:
                raise MatrixFormatError(f"row index {e} out of range 1..{m}", number)
            from_cols.add((e - 1, col))

    from_rows: Set[Tuple[int, int]] = set()
    for row, (number, tokens) in enumerate(lines[4 + n : 4 + n + m]):
        entries = [e for e in _ints(tokens, number) if e != 0]
        if len(entries) != row_degrees[row]:
            raise MatrixFormatError(
                f"row {row + 1} lists {len(entries)} columns, degree says "
                f"{row_degrees[row]}",
                number,
            )
        for e in entries:
            if not 1 <= e <= n:
                raise MatrixFormatError(f"column index {e} out of range 1..{n}", number)
            from_rows.add((row, e - 1))

    if from_cols != from_rows:
        raise MatrixFormatError(
            "column lists and row lists disagree", lines[4 + n + m - 1][0]
        )

    masks = [0] * m
    for row, col in from_rows:
        masks[row] |= 1 << col
    return BitMatrix(tuple(masks), n)


def detect_format(text: str, path: str = "") -> str:
    """
    Guess whether ``text`` is dense or alist.

    A ``.alist`` extension decides immediately; otherwise the text is dense
    when its header ``r n`` is followed by exactly r rows of n binary tokens.
    """
    if Path(path).suffix.lower() == ".alist":
        return "alist"
    lines = _numbered_lines(text)
    if lines and len(lines[0][1]) == 2:
        try:
            r, n = (int(tok) for tok in lines[0][1])
        except ValueError:
            return "dense"
        body = lines[1:]
        if len(body) == r and all(
            len(tokens) == n and set(tokens) <= {"0", "1"} for _, tokens in body
        ):
            return "dense"
        return "alist"
    return "dense"


def parse_matrix(text: str, fmt: str = "auto", path: str = "") -> BitMatrix:
    if fmt not in FORMATS:
        raise MatrixFormatError(f"unknown format {fmt!r}; choose from {FORMATS}")
    if fmt == "auto":
        fmt = detect_format(text, path)
        logger.debug(f"detected {fmt} format for {path or '<text>'}")
    return parse_alist(text) if fmt == "alist" else parse_dense(text)


def load_matrix(path: str, fmt: str = "auto") -> BitMatrix:
    """
    Read a matrix file.

    Args:
        path: file to read
        fmt: "auto", "dense" or "alist"

    Raises:
        FileNotFoundError: If the file doesn't exist
        MatrixFormatError: If the file is not UTF-8 text or is malformed
    """
    if not Path(path).exists():
        raise FileNotFoundError(f"matrix file not found: {path}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        logger.error(f"{path} is not UTF-8 text: {e}")
        raise MatrixFormatError(f"not a UTF-8 text file (byte {e.start} is invalid)")
    H = parse_matrix(text, fmt, path)
    logger.info(f"Loaded {H.n_rows}x{H.n_cols} matrix from {path}")
    return H


def format_dense(H: BitMatrix) -> str:
    return f"{H.n_rows} {H.n_cols}\n{H}\n"


def format_alist(H: BitMatrix) -> str:
    col_lists = [
        [j + 1 for j in range(H.n_rows) if H.entry(j, i)] for i in range(H.n_cols)
    ]
    row_lists = [[i + 1 for i in support(row)] for row in H.rows]
    max_col = max(1, max(len(c) for c in col_lists))
    max_row = max(1, max(len(r) for r in row_lists))

    def padded(entries: List[int], width: int) -> str:
        return " ".join(str(e) for e in entries + [0] * (width - len(entries)))

    lines = [
        f"{H.n_cols} {H.n_rows}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [padded(c, max_col) for c in col_lists]
    lines += [padded(r, max_row) for r in row_lists]
    return "\n".join(lines) + "\n"
