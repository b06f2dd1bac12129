"""Exact fraction-free row reduction for truncated-jet matrices.

Rows are integer vectors (each row is scaled to clear denominators before
reduction, which changes nothing about its span).  Pivoting is by
position: columns are scanned left to right and the first row with a
nonzero entry is used, so results are deterministic.  Updated rows are
divided by their gcd to keep entries small; only the rank and the pivot
columns are consumed by callers, both invariant under row scaling.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for c in row:
            den = den * c.denominator // gcd(den, c.denominator)
        out.append([int(c * den) for c in row])
    return out


def _strip(row: list[int]) -> None:
    g = 0
    for v in row:
        if v:
            g = gcd(g, abs(v))
            if g == 1:
                return
    if g > 1:
        for i, v in enumerate(row):
            row[i] = v // g


def row_reduce(rows: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """In-place elimination; returns (rank, pivot column indices)."""
    work = [row for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        piv = work[r][col]
        for i in range(r + 1, len(work)):
            v = work[i][col]
            if not v:
                continue
            row = work[i]
            prow = work[r]
            for j in range(col, ncols):
                row[j] = row[j] * piv - prow[j] * v
            _strip(row)
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return r, pivots


def matrix_rank(rows: list[list[Fraction]], ncols: int) -> int:
    rank, _ = row_reduce(integer_rows(rows), ncols)
    return rank
