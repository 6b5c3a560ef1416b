"""Fraction-free (Bareiss) elimination for exact rational linear systems."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class DimensionOverflow(RuntimeError):
    pass


def _integer_rows(A: Sequence[Sequence], b: Sequence | None):
    rows = []
    for i, row in enumerate(A):
        vals = [Fraction(x) for x in row]
        if b is not None:
            vals.append(Fraction(b[i]))
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        rows.append([int(v * den) for v in vals])
    return rows


def bareiss_echelon(M: list[list[int]], columns: Sequence[int]):
    """In-place fraction-free row echelon form of an integer matrix.

    Pivots are searched in the order given by ``columns``; returns the list of
    (row, column) pivot positions.
    """
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    prev = 1
    r = 0
    pivots = []
    for c in columns:
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        rowr = M[r]
        for i in range(r + 1, nrows):
            rowi = M[i]
            a = rowi[c]
            if a == 0:
                if piv != prev:
                    for j in range(ncols):
                        v = rowi[j]
                        if v:
                            q, rem = divmod(piv * v, prev)
                            assert rem == 0
                            rowi[j] = q
                continue
            for j in range(ncols):
                v = piv * rowi[j] - a * rowr[j]
                if v:
                    q, rem = divmod(v, prev)
                    assert rem == 0, "Bareiss division not exact"
                    rowi[j] = q
                else:
                    rowi[j] = 0
        pivots.append((r, c))
        prev = piv
        r += 1
    return pivots


def solve_exact(A: Sequence[Sequence], b: Sequence, column_order: Sequence[int] | None = None,
                max_unknowns: int | None = None):
    """Solve A x = b over Q; returns a list of Fractions or None if inconsistent.

    Free unknowns are set to zero.  ``column_order`` sets pivot preference:
    earlier columns become pivots first, so unknowns listed last tend to stay zero.
    """
    ncols = len(A[0]) if A else 0
    if max_unknowns is not None and ncols > max_unknowns:
        raise DimensionOverflow(f"{ncols} unknowns exceeds cap {max_unknowns}")
    if not A:
        return [Fraction(0)] * ncols
    order = list(column_order) if column_order is not None else list(range(ncols))
    M = _integer_rows(A, b)
    pivots = bareiss_echelon(M, order)
    rank = len(pivots)
    for i in range(rank, len(M)):
        if M[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, c in reversed(pivots):
        s = Fraction(M[r][ncols])
        row = M[r]
        for j in range(ncols):
            if j != c and row[j] and x[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return x


def rank_exact(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    M = _integer_rows(A, None)
    return len(bareiss_echelon(M, range(len(M[0]))))
