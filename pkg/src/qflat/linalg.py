"""Dense linear algebra over Q with Fraction entries.

Matrices are lists (or tuples) of rows. Nothing here is fast; the sizes in
this package are at most a dozen or so.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list[Fraction]:
    n = len(a[0]) if a else 0
    out = [Fraction(0)] * n
    for vi, row in zip(v, a):
        if vi:
            for j in range(n):
                out[j] += vi * row[j]
    return out


def congruent(b: Sequence[Sequence], g: Sequence[Sequence]) -> Matrix:
    """``b · g · bᵀ``."""
    return matmul(matmul(b, g), transpose(b))


def scale(a: Sequence[Sequence], c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def det(a: Sequence[Sequence]) -> Fraction:
    m = to_matrix(a)
    n = len(m)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        p = m[col][col]
        d *= p
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f /= p
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return d


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    m = to_matrix(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(to_matrix(a), identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def left_nullspace_of_column(col: Sequence) -> Matrix:
    """Basis (rows) of {x : x · col = 0} via the first nonzero pivot."""
    col = [Fraction(c) for c in col]
    n = len(col)
    k = next(i for i, c in enumerate(col) if c != 0)
    basis = []
    for i in range(n):
        if i == k:
            continue
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        v[k] = -col[i] / col[k]
        basis.append(v)
    return basis


def solve_left(b: Sequence[Sequence], y: Sequence[Sequence]) -> Matrix:
    """Find T with ``T · b = y`` for b of full row rank (rows of y in the row span of b)."""
    bt = transpose(b)
    k = len(b)
    out = []
    aug_base = to_matrix(bt)
    for row in y:
        aug = [r + [Fraction(v)] for r, v in zip(aug_base, row)]
        red, piv = rref(aug)
        if k in piv:
            raise ValueError("row is not in the span")
        sol = [Fraction(0)] * k
        for i, c in enumerate(piv):
            sol[c] = red[i][k]
        out.append(sol)
    return out
