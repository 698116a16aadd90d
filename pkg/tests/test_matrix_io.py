"""
Tests for the dense and alist matrix formats.
"""

from pathlib import Path

import pytest

from conftest import data_path
from pcw_analyzer.errors import MatrixFormatError
from pcw_analyzer.matrix_io import (
    detect_format,
    format_alist,
    format_dense,
    load_matrix,
    parse_alist,
    parse_dense,
    parse_matrix,
)


def test_alist_and_dense_files_agree(h_prime):
    assert load_matrix(data_path("h_prime.alist")) == h_prime
    assert load_matrix(data_path("h_prime.alist"), fmt="alist") == h_prime


def test_format_alist_matches_fixture(h_prime):
    expected = Path(data_path("h_prime.alist")).read_text(encoding="utf-8")
    assert format_alist(h_prime) == expected


def test_dense_text_parses_back(h_example):
    assert parse_dense(format_dense(h_example)) == h_example


def test_detect_format():
    dense = Path(data_path("h_ex1.txt")).read_text(encoding="utf-8")
    alist = Path(data_path("h_prime.alist")).read_text(encoding="utf-8")
    assert detect_format(dense) == "dense"
    assert detect_format(alist) == "alist"
    assert detect_format(dense, "matrix.alist") == "alist"


def test_dense_errors_carry_line_numbers():
    text = Path(data_path("malformed.txt")).read_text(encoding="utf-8")
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_dense(text)
    assert excinfo.value.line == 3
    assert "line 3" in str(excinfo.value)


def test_dense_row_count_mismatch():
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_dense("3 2\n1 0\n0 1\n")
    assert "expected 3 rows" in str(excinfo.value)


def test_dense_ragged_row():
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_dense("2 3\n1 0 1\n0 1\n")
    assert excinfo.value.line == 3


def test_dense_comments_are_ignored():
    H = parse_dense("# comment\n1 2  # header\n1 1\n")
    assert H.to_lists() == [[1, 1]]


def test_alist_inconsistent_lists():
    text = "2 1\n1 2\n1 1\n2\n1\n0\n1 2\n"
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_alist(text)
    assert "column 2" in str(excinfo.value)


def test_alist_lists_must_agree():
    # columns say the single row touches both bits; the row says only bit 1 twice
    text = "2 1\n1 2\n1 1\n2\n1\n1\n1 1\n"
    with pytest.raises(MatrixFormatError):
        parse_alist(text)


def test_unknown_format():
    with pytest.raises(MatrixFormatError):
        parse_matrix("1 1\n1\n", fmt="csv")


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_matrix(data_path("does_not_exist.txt"))


def test_non_utf8_file_is_a_format_error(tmp_path):
    path = tmp_path / "latin1.txt"
    path.write_bytes(b"1 2\n1 \xff\n")
    with pytest.raises(MatrixFormatError, match="UTF-8"):
        load_matrix(str(path))
