"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import isqrt

from qflat.qspace import QuadraticSpace, signature

ACCEPTANCE_LINES: list[str] = []


def random_rational(rng: random.Random, height: int = 6) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_definite_space(rng: random.Random, dims=(2, 5), height: int = 6) -> QuadraticSpace:
    """A positive definite space with Gram entries of height <= ``height``."""
    while True:
        n = rng.randint(*dims)
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = Fraction(rng.randint(1, height), rng.randint(1, height))
            for j in range(i + 1, n):
                if rng.random() < 0.6:
                    g[i][j] = g[j][i] = random_rational(rng, height)
        try:
            space = QuadraticSpace(g)
        except ValueError:
            continue
        if signature(space)[1] == 0:
            return space


def random_vector(rng: random.Random, n: int, height: int = 5) -> list[int]:
    while True:
        h = [rng.randint(-height, height) for _ in range(n)]
        if any(h):
            return h


def squares_mod(m: int) -> set[int]:
    return {(x * x) % m for x in range(m)}


def brute_hilbert(a: int, b: int, p: int) -> int:
    """(a, b)_p for squarefree integers by searching primitive solutions of
    a x^2 + b y^2 = z^2 modulo p^3 (odd p) or 2^6."""
    m = p ** 6 if p == 2 else p ** 3
    sq = squares_mod(m)
    for x in range(m):
        for y in range(m):
            if x % p == 0 and y % p == 0:
                continue  # z would be divisible by p as well
            if (a * x * x + b * y * y) % m in sq:
                return 1
    return -1


def theta_power_counts(n: int, top: int) -> list[int]:
    """Coefficients of (sum_k x^(k^2))^n up to x^top."""
    base = [0] * (top + 1)
    k = 0
    while k * k <= top:
        base[k * k] += 1 if k == 0 else 2
        k += 1
    out = [1] + [0] * top
    for _ in range(n):
        new = [0] * (top + 1)
        for i, a in enumerate(out):
            if a:
                for j in range(top + 1 - i):
                    if base[j]:
                        new[i + j] += a * base[j]
        out = new
    return out


def rational_representation_search(diag, q: int, wmax: int) -> bool:
    """Whether sum a_i x_i^2 = q w^2 has an integer solution with 1 <= w <= wmax
    (diagonal positive definite integer forms)."""
    for w in range(1, wmax + 1):
        target = q * w * w
        ranges = [range(0, isqrt(target // a) + 1) for a in diag[:-1]]
        last = diag[-1]
        for xs in itertools.product(*ranges):
            rest = target - sum(a * x * x for a, x in zip(diag, xs))
            if rest < 0 or rest % last:
                continue
            r = rest // last
            if isqrt(r) ** 2 == r:
                return True
    return False
