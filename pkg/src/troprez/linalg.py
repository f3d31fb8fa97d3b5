"""Exact rank and determinant routines.

GF(2) matrices are held as lists of Python ints used as bit rows; integer
matrices as lists of lists and reduced with fraction-free (Bareiss)
elimination, so nothing here ever touches floating point.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix given as bitmask rows."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            other = pivots.get(lead)
            if other is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= other
    return rank


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix via fraction-free elimination."""
    a = [list(r) for r in matrix if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = None
        for r in range(rank, m):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, m):
            f = a[r][col]
            row_r = a[r]
            row_p = a[rank]
            for c in range(col, n):
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (exact)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{column: value}`` rows.

    Rows are combined by integer row operations and divided by their
    content, which keeps entries small on boundary matrices.
    """
    pivots: dict[int, dict] = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            other = pivots.get(lead)
            if other is None:
                pivots[lead] = row
                rank += 1
                break
            p, f = other[lead], row[lead]
            merged = {c: p * v for c, v in row.items()}
            for c, v in other.items():
                merged[c] = merged.get(c, 0) - f * v
            row = {c: v for c, v in merged.items() if v}
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
    return rank
