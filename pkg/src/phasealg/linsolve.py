"""Exact linear algebra over rationals (sparse RREF, nullspace, inverse).

Rows are sparse ``{column: Fraction}`` maps.  Everything is deterministic:
pivots are chosen as the smallest column index, so repeated runs produce
identical reduced forms and identical nullspace bases.
"""

from __future__ import annotations

from fractions import Fraction


def sparse_rref(rows) -> dict[int, dict[int, Fraction]]:
    """Fully reduced row-echelon form, returned as ``pivot_col -> row``.

    Every returned row has coefficient 1 at its pivot column and zeros at all
    other pivot columns.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: v for c, v in raw.items() if v != 0}
        while row:
            col = min(row)
            if col not in pivots:
                break
            factor = row.pop(col)
            for c, v in pivots[col].items():
                if c == col:
                    continue
                new = row.get(c, Fraction(0)) - factor * v
                if new == 0:
                    row.pop(c, None)
                else:
                    row[c] = new
        if not row:
            continue
        col = min(row)
        inv = Fraction(1) / row[col]
        row = {c: v * inv for c, v in row.items()}
        for prow in pivots.values():
            if col in prow:
                factor = prow.pop(col)
                for c, v in row.items():
                    if c == col:
                        continue
                    new = prow.get(c, Fraction(0)) - factor * v
                    if new == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = new
        pivots[col] = row
    return pivots


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Canonical basis of the solution space of the homogeneous system.

    One vector per free column, carrying 1 there; ordered by free column
    index, which makes the result reproducible.
    """
    pivots = sparse_rref(rows)
    basis: list[list[Fraction]] = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pcol, prow in pivots.items():
            coeff = prow.get(free)
            if coeff:
                vec[pcol] = -coeff
        basis.append(vec)
    return basis


def invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a small dense square matrix (Gauss-Jordan)."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
