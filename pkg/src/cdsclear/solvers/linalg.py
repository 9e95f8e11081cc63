"""
Exact Gauss-Jordan elimination over the rationals.
"""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from cdsclear.exceptions import SingularSystem


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``A x = b`` for square, full-rank ``A``.

    Args:
        matrix: Row-major coefficients; not modified.
        rhs: Right-hand side.

    Returns:
        The unique solution.

    Raises:
        SingularSystem: If ``A`` is not square or not of full rank.
    """
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise SingularSystem(f"expected a square system of size {n}")
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]

    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"matrix is not full rank (column {col})")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        if lead != 1:
            rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r == col or rows[r][col] == 0:
                continue
            factor = rows[r][col]
            rows[r] = [v - factor * p for v, p in zip(rows[r], rows[col])]

    return [rows[r][n] for r in range(n)]
