"""
Shared fixtures: the example matrices stored under tests/data.
"""

from pathlib import Path

import numpy as np
import pytest

from pcw_analyzer.gf2 import BitMatrix
from pcw_analyzer.matrix_io import load_matrix

DATA_DIR = Path(__file__).parent / "data"

PIVOT_WITNESS = (2, 2, 8, 8, 8, 8, 2, 2, 2, 2, 2, 2)

# generators of the length-7 code with the cycle-free and cycle representations
LENGTH7_GENERATORS = [
    (1, 1, 0, 1, 0, 1, 0),
    (0, 1, 1, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 1),
]

# no row subset is a forest and no pivotal-check candidate verifies
FALLBACK_H = BitMatrix.from_lists(
    [
        [1, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 1, 1],
        [1, 1, 1, 0, 0, 0, 0],
        [1, 1, 1, 1, 1, 0, 0],
        [0, 0, 1, 1, 1, 1, 1],
        [0, 0, 0, 1, 1, 0, 0],
    ]
)
FALLBACK_REF = BitMatrix.from_lists(
    [
        [1, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 1, 1],
    ]
)


def data_path(name: str) -> str:
    return str(DATA_DIR / name)


@pytest.fixture
def h_ex1() -> BitMatrix:
    return load_matrix(data_path("h_ex1.txt"))


@pytest.fixture
def h_prime() -> BitMatrix:
    return load_matrix(data_path("h_prime.txt"))


@pytest.fixture
def h_example() -> BitMatrix:
    return load_matrix(data_path("h_example.txt"))


@pytest.fixture
def star7() -> BitMatrix:
    return load_matrix(data_path("star7.txt"))


@pytest.fixture
def cycle7() -> BitMatrix:
    return load_matrix(data_path("cycle7.txt"))


@pytest.fixture
def mixed7() -> BitMatrix:
    return load_matrix(data_path("mixed7.txt"))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


def random_matrix(rng: np.random.Generator, r: int, n: int) -> BitMatrix:
    """Random r x n matrix with no all-zero row."""
    rows = []
    for _ in range(r):
        row = 0
        while row == 0:
            row = int(rng.integers(1, 1 << n))
        rows.append(row)
    return BitMatrix(tuple(rows), n)
