"""Integer matrix normal forms on Python ints: Hermite, Smith, kernels."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class RankDeficientError(ValueError):
    pass


def common_denominator(rows: Sequence[Sequence]) -> int:
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return den


def scale_to_int(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Return ``(D * rows, D)`` with D the least common denominator."""
    den = common_denominator(rows)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


def _sub_row(a: list[int], b: list[int], f: int) -> None:
    for j in range(len(a)):
        a[j] -= f * b[j]


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form: a canonical echelon basis of the row lattice."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    _sub_row(a[i], a[r], a[i][c] // a[r][c])
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                _sub_row(a[i], a[r], f)
        r += 1
    return a[:r]


def hnf_rational(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Hermite basis of the Z-module generated by rational rows."""
    ints, den = scale_to_int(rows)
    return [[Fraction(x, den) for x in row] for row in hnf(ints)]


def functional_kernel(c: Sequence[int]) -> list[list[int]]:
    """Basis of ``{x in Z^k : x · c = 0}`` (rows), in Hermite form."""
    c = [int(x) for x in c]
    k = len(c)
    if all(x == 0 for x in c):
        raise ValueError("zero functional")
    # rows (c_i | e_i); reduce the first column to a single gcd entry
    rows = [[c[i]] + [int(i == j) for j in range(k)] for i in range(k)]
    while True:
        nz = [i for i in range(k) if rows[i][0] != 0]
        if len(nz) == 1:
            break
        i0 = min(nz, key=lambda i: abs(rows[i][0]))
        for i in nz:
            if i != i0:
                _sub_row(rows[i], rows[i0], rows[i][0] // rows[i0][0])
    kern = [r[1:] for r in rows if r[0] == 0]
    return hnf(kern)


def smith_normal_form(a: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors e_1 | e_2 | ... of a full-rank integer matrix."""
    m = [list(map(int, r)) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out: list[int] = []
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise RankDeficientError("matrix is not of full rank")
            i, j = best
            m[t], m[i] = m[i], m[t]
            for r in m:
                r[t], r[j] = r[j], r[t]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    _sub_row(m[i], m[t], m[i][t] // p)
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, cols):
                if m[t][j]:
                    f = m[t][j] // p
                    for r in m:
                        r[j] -= f * r[t]
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(m[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                break
            for j in range(cols):
                m[t][j] += m[bad][j]
        out.append(abs(m[t][t]))
    return out


def elementary_divisors(t: Sequence[Sequence]) -> list[Fraction]:
    """Elementary divisors of a nonsingular rational matrix."""
    ints, den = scale_to_int(t)
    return [Fraction(e, den) for e in smith_normal_form(ints)]
