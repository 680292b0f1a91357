#!/usr/bin/env python3
"""
Shared matrices and instances for the test suites
"""

import tempfile
from pathlib import Path

from trop_core import INF, TropMatrix, format_matrix
from reductions import SplitInstance, SsrefInstance

# Zero row against a diagonal corner: factor rank at least 4.
CERTIFICATE_4X4 = [
    [0, 2, 2, 0],
    [2, 0, 2, 0],
    [2, 2, 0, 0],
    [2, 2, 2, 0],
]

DIAGONAL_3X3 = [[0, 2, 2], [2, 0, 2], [2, 2, 0]]

# Permanent attained by both 3-cycles; factor rank 3 nonetheless.
OFF_DIAGONAL_3X3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

IDENTITY_2X2 = [[0, INF], [INF, 0]]

# B and C of factor rank 3 whose product is a 4 x 4 matrix.
RANK3_LEFT = [[0, 3, 5], [4, 0, 2], [6, 1, 0], [2, 2, 2]]
RANK3_RIGHT = [[0, 4, 7, 1], [5, 0, 3, 6], [2, 6, 0, 4]]

# The smallest band instance: one subset {1, 2}.
SPLIT_PAIR = SplitInstance.of(2, [[1, 2]])
SSREF_PAIR = SsrefInstance.of([0, 2], [[1], [2]])

# Triangle: no 2-colouring leaves every edge split.
SPLIT_TRIANGLE = SplitInstance.of(3, [[1, 2], [2, 3], [1, 3]])

SPLIT_PATH = SplitInstance.of(3, [[1, 2], [2, 3]])


def matrix(rows) -> TropMatrix:
    return TropMatrix.from_rows(rows)


def write_temp_matrix(rows, directory=None) -> Path:
    """Write rows in the matrix text format to a fresh temporary file"""
    directory = Path(directory or tempfile.mkdtemp())
    path = directory / f"m{len(list(directory.iterdir()))}.txt"
    path.write_text(format_matrix(matrix(rows)), encoding="utf-8")
    return path
