"""Exact linear algebra over the rationals.

Matrices are lists of rows. Entries may be ``int`` or ``Fraction``; results are
``Fraction`` (or ``int`` where stated). Elimination is fraction-free (Bareiss)
on an integer-scaled copy, so intermediate entries stay integers and every
division is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def integer_rows(matrix: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    rows = []
    for row in matrix:
        m = _lcm_denominators(row)
        rows.append([int(Fraction(v) * m) for v in row])
    return rows


def bareiss(matrix: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the integer echelon matrix and the list of pivot columns. Row
    scaling does not change the row space, so the echelon form spans the same
    space as ``matrix``.
    """
    a = integer_rows(matrix)
    if not a:
        return [], []
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (a[i][j] * piv - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix: Matrix) -> int:
    return len(bareiss(matrix)[1])


def rref(matrix: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    ech, pivots = bareiss(matrix)
    rows = [[Fraction(v) for v in ech[i]] for i in range(len(pivots))]
    for i, c in enumerate(pivots):
        p = rows[i][c]
        rows[i] = [v / p for v in rows[i]]
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        for k in range(i):
            f = rows[k][c]
            if f:
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
    return rows, pivots


def nullspace(matrix: Matrix, n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return basis


def transpose(matrix: Matrix) -> list[list[Fraction]]:
    return [list(col) for col in zip(*matrix)]


def matvec(matrix: Matrix, vec: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]


def solve(matrix: Matrix, rhs: Sequence[Fraction]) -> tuple[list[Fraction] | None, list[int]]:
    """Solve ``A x = b``.

    Returns ``(x, free)`` where ``x`` is the particular solution with all free
    variables set to zero (``None`` if inconsistent) and ``free`` lists the
    columns left undetermined.
    """
    n_cols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if n_cols in pivots:
        return None, []
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][n_cols]
    free = [c for c in range(n_cols) if c not in pivots]
    return x, free


def determined_columns(matrix: Matrix, n_cols: int) -> list[bool]:
    """Which unknowns are uniquely fixed by ``A x = b`` (if consistent).

    Unknown ``j`` is determined iff the unit vector ``e_j`` is orthogonal to
    the nullspace of ``A``.
    """
    null = nullspace(matrix, n_cols) if matrix else nullspace([], n_cols)
    return [all(v[j] == 0 for v in null) for j in range(n_cols)]


def primitive_integer(vec: Sequence[Fraction]) -> list[int]:
    """Clear denominators and divide by the gcd; sign unchanged."""
    m = _lcm_denominators(vec)
    ints = [int(Fraction(v) * m) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    return [v // g for v in ints]


def same_row_space(a: Matrix, b: Matrix) -> bool:
    """True iff the rational row spans of ``a`` and ``b`` coincide."""
    ra, rb = rank(a) if a else 0, rank(b) if b else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(list(a) + list(b)) == ra
