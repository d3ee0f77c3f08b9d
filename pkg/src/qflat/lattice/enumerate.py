"""Exact enumeration of lattice vectors of a given norm.

The positive definite Gram matrix is scaled to an integer matrix B and
decomposed as ``yᵀBy = Σ d_i (y_i - c_i)^2`` with the center of coordinate i
depending only on earlier coordinates (the decomposition is taken on the
reversed coordinate order). All quantities are then rescaled to integers:

    d_i (y_i - C_i/E_i)^2 = w_i (E_i y_i - C_i)^2 / Λ

so the search is a depth-first loop over integer budgets with integer square
roots and nothing is ever rounded. Coordinates are visited in increasing
order at every level, which yields vectors in lexicographic order.

Two implementations share this setup: a pure Python reference and a numba
kernel on int64 that is used when a precomputed bound shows that no
intermediate value can overflow.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

import numpy as np

from .. import linalg
from ..arith import as_fraction
from .zlattice import ZLattice

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

INT64_SAFE = 2 ** 62


class IndefiniteFormError(ValueError):
    pass


@dataclass(frozen=True)
class SearchPlan:
    """Integer data of the decomposition, in search order (outer level first).

    ``rows[i]`` lists the multipliers of the already fixed coordinates
    0..i-1 entering the center numerator of coordinate i.
    """

    k: int
    target: int  # Λ · T
    weights: tuple[int, ...]
    denoms: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    bound: int  # |y_i| <= bound for every solution
    fits_int64: bool


def _ldl(b: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """b = L D Lᵀ with L unit lower triangular."""
    k = len(b)
    low = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    d = [Fraction(0)] * k
    for j in range(k):
        d[j] = b[j][j] - sum((low[j][s] ** 2 * d[s] for s in range(j)), Fraction(0))
        if d[j] <= 0:
            raise IndefiniteFormError("the form is not positive definite")
        for i in range(j + 1, k):
            low[i][j] = (b[i][j] - sum((low[i][s] * low[j][s] * d[s] for s in range(j)),
                                       Fraction(0))) / d[j]
    return low, d


def make_plan(gram, q) -> SearchPlan | None:
    """Search data for ``{y : yᵀ gram y = q}``; None when the set is trivially empty."""
    g = [[as_fraction(x) for x in row] for row in gram]
    q = as_fraction(q)
    k = len(g)
    if q <= 0:
        raise ValueError("q must be positive")
    s = 1
    for row in g:
        for x in row:
            s = lcm(s, x.denominator)
    t = q * s
    if t.denominator != 1:
        return None
    t = int(t)
    # reverse coordinates: the LDL center of the last reversed coordinate depends
    # on nothing, so it becomes the outermost loop
    rev = [[g[k - 1 - i][k - 1 - j] * s for j in range(k)] for i in range(k)]
    low, d = _ldl(rev)
    # reversed index r ↔ search level k-1-r; center of r depends on reversed j > r
    weights, denoms, rows = [], [], []
    lam = 1
    es = []
    for level in range(k):
        r = k - 1 - level
        mult = [low[j][r] for j in range(r + 1, k)]
        e = 1
        for m in mult:
            e = lcm(e, m.denominator)
        es.append(e)
        lam = lcm(lam, (d[r] / (e * e)).denominator)
    for level in range(k):
        r = k - 1 - level
        e = es[level]
        weights.append(int(lam * d[r] / (e * e)))
        denoms.append(e)
        # reversed coordinate j (> r) is search level k-1-j (< level)
        row = [0] * k
        for j in range(r + 1, k):
            row[k - 1 - j] = int(-low[j][r] * e)
        rows.append(tuple(row))
    target = lam * t
    # |y_i|^2 <= T (B^-1)_ii in the original coordinates
    inv = linalg.inverse(rev)
    bound = max(isqrt(int(t * inv[r][r]) + 1) + 1 for r in range(k))
    worst = 0
    for level in range(k):
        cmax = sum(abs(x) for x in rows[level]) * bound + denoms[level] * bound
        worst = max(worst, weights[level] * cmax * cmax, cmax * cmax)
    fits = target < INT64_SAFE and worst < INT64_SAFE
    return SearchPlan(k, target, tuple(weights), tuple(denoms), tuple(rows), bound, fits)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _search_py(plan: SearchPlan, first_range: tuple[int, int] | None = None):
    k = plan.k
    y = [0] * k
    out = []

    def level(i: int, budget: int):
        w, e, row = plan.weights[i], plan.denoms[i], plan.rows[i]
        c = sum(row[j] * y[j] for j in range(i))
        r = isqrt(budget // w)
        lo, hi = _ceil_div(c - r, e), (c + r) // e
        if i == 0 and first_range is not None:
            lo, hi = max(lo, first_range[0]), min(hi, first_range[1])
        for v in range(lo, hi + 1):
            z = e * v - c
            rest = budget - w * z * z
            if rest < 0:
                continue
            y[i] = v
            if i == k - 1:
                if rest == 0:
                    out.append(tuple(y))
            else:
                level(i + 1, rest)
        y[i] = 0

    level(0, plan.target)
    return out


if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def _isqrt64(n):
        if n <= 0:
            return 0
        bits = 0
        m = n
        while m > 0:
            m >>= 1
            bits += 1
        x = np.int64(1) << ((bits + 1) // 2)
        # integer Newton iteration from above
        while True:
            y = (x + n // x) >> 1
            if y >= x:
                return x
            x = y

    @numba.njit(cache=True, nogil=True)
    def _search_nb(k, target, weights, denoms, rows, lo0, hi0, out):
        y = np.zeros(k, np.int64)
        budget = np.zeros(k + 1, np.int64)
        lo = np.zeros(k, np.int64)
        hi = np.zeros(k, np.int64)
        cen = np.zeros(k, np.int64)
        cap = out.shape[0]
        count = 0
        i = 0
        budget[0] = target
        # set up level 0
        r = _isqrt64(budget[0] // weights[0])
        lo[0] = -((-(0 - r)) // denoms[0])
        hi[0] = (0 + r) // denoms[0]
        if lo[0] < lo0:
            lo[0] = lo0
        if hi[0] > hi0:
            hi[0] = hi0
        y[0] = lo[0] - 1
        while i >= 0:
            y[i] += 1
            if y[i] > hi[i]:
                i -= 1
                continue
            z = denoms[i] * y[i] - cen[i]
            rest = budget[i] - weights[i] * z * z
            if rest < 0:
                continue
            if i == k - 1:
                if rest == 0:
                    if count < cap:
                        for j in range(k):
                            out[count, j] = y[j]
                    count += 1
                continue
            i += 1
            budget[i] = rest
            c = np.int64(0)
            for j in range(i):
                c += rows[i, j] * y[j]
            cen[i] = c
            r = _isqrt64(rest // weights[i])
            lo[i] = -((-(c - r)) // denoms[i])
            hi[i] = (c + r) // denoms[i]
            y[i] = lo[i] - 1
        return count


def _search_np(plan: SearchPlan, lo0: int, hi0: int) -> np.ndarray:
    weights = np.array(plan.weights, np.int64)
    denoms = np.array(plan.denoms, np.int64)
    rows = np.array(plan.rows, np.int64).reshape(plan.k, plan.k)
    cap = 1024
    while True:
        out = np.empty((cap, plan.k), np.int64)
        n = _search_nb(plan.k, plan.target, weights, denoms, rows, lo0, hi0, out)
        if n <= cap:
            return out[:n]
        cap = n


def thread_count() -> int:
    try:
        n = int(os.environ.get("QFLAT_THREADS", "0"))
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def enumerate_coordinates(gram, q, *, backend: str = "auto", chunks: int | None = None) -> np.ndarray:
    """All integer y with ``yᵀ gram y = q``, sorted lexicographically (k columns)."""
    g = [[as_fraction(x) for x in row] for row in gram]
    k = len(g)
    plan = make_plan(g, q)
    if plan is None:
        return np.zeros((0, k), dtype=object if backend == "python" else np.int64)
    use_nb = backend in ("auto", "numba") and numba is not None and plan.fits_int64
    if backend == "numba" and not use_nb:
        raise ValueError("numba backend unavailable or values exceed int64")
    if not use_nb:
        rows = _search_py(plan)
        arr = np.empty((len(rows), k), dtype=object)
        for i, r in enumerate(rows):
            arr[i] = r
        return arr
    b = plan.bound
    parts = chunks or thread_count()
    if parts <= 1:
        return _search_np(plan, -b, b)
    # partition the outermost coordinate range and merge in order
    edges = np.linspace(-b, b + 1, parts + 1).astype(np.int64)
    ranges = [(int(edges[i]), int(edges[i + 1]) - 1) for i in range(parts) if edges[i] < edges[i + 1]]
    with ThreadPoolExecutor(max_workers=min(len(ranges), thread_count())) as ex:
        pieces = list(ex.map(lambda r: _search_np(plan, r[0], r[1]), ranges))
    return np.concatenate(pieces) if pieces else np.zeros((0, k), np.int64)


def enumerate_vectors(lat: ZLattice, q, *, backend: str = "auto") -> list[tuple[int, ...]]:
    """Coordinate vectors (w.r.t. ``lat.basis``) of all x in L with ``phi[x] = q``."""
    arr = enumerate_coordinates(lat.gram, q, backend=backend)
    return [tuple(int(v) for v in row) for row in arr]


def to_ambient(lat: ZLattice, coords) -> list[Fraction]:
    return linalg.vecmat([Fraction(int(c)) for c in coords], lat.basis)
