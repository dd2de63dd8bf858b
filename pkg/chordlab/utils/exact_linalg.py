"""
Exact integer and rational linear algebra on small dense matrices.

Elimination is fraction-free (Bareiss): every intermediate entry is a minor
of the input, so the integer divisions are exact and nothing is rounded.
"""
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from chordlab.errors import VerificationError


def _to_rows(matrix) -> List[List[int]]:
    return [[int(x) for x in row] for row in matrix]


def bareiss_eliminate(matrix) -> Tuple[List[List[int]], int]:
    """
    Upper-triangularize an integer matrix (square, or square plus extra columns).

    Returns (rows, sign). The determinant of the leading square block is
    sign * rows[-1][n-1]; a zero there means the block is singular.
    """
    rows = _to_rows(matrix)
    n = len(rows)
    width = len(rows[0]) if rows else 0
    sign = 1
    prev = 1
    for i in range(n - 1):
        if rows[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if rows[r][i] != 0), None)
            if swap is None:
                rows[n - 1][n - 1] = 0
                return rows, sign
            rows[i], rows[swap] = rows[swap], rows[i]
            sign = -sign
        pivot = rows[i][i]
        for r in range(i + 1, n):
            factor = rows[r][i]
            row_r = rows[r]
            row_i = rows[i]
            for c in range(i + 1, width):
                row_r[c] = (row_r[c] * pivot - factor * row_i[c]) // prev
            row_r[i] = 0
        prev = pivot
    return rows, sign


def determinant(matrix) -> int:
    rows, sign = bareiss_eliminate(matrix)
    if not rows:
        return 1
    return sign * rows[-1][len(rows) - 1]


def solve(matrix, rhs: Sequence) -> List[Fraction]:
    """
    Exact solution of matrix @ x = rhs for an integer matrix and rational rhs.

    Raises VerificationError if the matrix is singular.
    """
    rhs = [Fraction(v) for v in rhs]
    scale = math.lcm(*(v.denominator for v in rhs)) if rhs else 1
    augmented = [list(row) + [int(v * scale)] for row, v in zip(_to_rows(matrix), rhs)]
    rows, _ = bareiss_eliminate(augmented)
    n = len(rows)
    if n == 0 or rows[-1][n - 1] == 0:
        raise VerificationError("matrix is singular", size=n)

    x: List[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rows[i][n])
        for c in range(i + 1, n):
            acc -= rows[i][c] * x[c]
        x[i] = acc / rows[i][i]
    return [v / scale for v in x]
