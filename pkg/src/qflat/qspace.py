"""Quadratic spaces over Q and their classifying invariants.

A space is stored as a symmetric nondegenerate rational Gram matrix ``G`` with
``phi(x, y) = xᵀ G y``. Its invariants are the tuple ``(n, d, ram, s_inf)``:
dimension, squarefree part of ``delta = (-1)^(n(n-1)/2) det G``, the set of
places where the characteristic quaternion algebra is a division algebra, and
the signature index ``i - j`` at the real place.

Local structure at a prime is computed from the diagonalized form through the
triple ``(dim, det, hasse)``: isotropic forms shed hyperbolic planes until the
anisotropic core remains; its dimension is the core dimension and its Hasse
symbol decides the characteristic algebra when the core is binary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .arith import (
    INF,
    as_fraction,
    format_rational,
    hilbert,
    is_rational_square,
    is_squarefree,
    prime_support,
    sorted_places,
    squarefree_part,
    xi,
)


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticSpace:
    """A nondegenerate quadratic space (Qⁿ, G)."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(as_fraction(x) for x in row) for row in self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and nonempty")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)
        if linalg.det(g) == 0:
            raise DegenerateFormError("the form is degenerate")

    @classmethod
    def identity(cls, n: int) -> "QuadraticSpace":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Iterable) -> "QuadraticSpace":
        e = [as_fraction(x) for x in entries]
        n = len(e)
        return cls(tuple(tuple(e[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @classmethod
    def hyperbolic_plane(cls) -> "QuadraticSpace":
        h = Fraction(1, 2)
        return cls(((Fraction(0), h), (h, Fraction(0))))

    @classmethod
    def from_json(cls, data) -> "QuadraticSpace":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        gram = data["gram"]
        n = data.get("n", len(gram))
        if n != len(gram):
            raise ValueError(f"declared n={n} but Gram matrix has {len(gram)} rows")
        return cls(tuple(tuple(as_fraction(x) for x in row) for row in gram))

    def to_json(self) -> dict:
        return {"n": self.n, "gram": [[format_rational(x) for x in row] for row in self.gram]}

    @property
    def n(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> Fraction:
        return linalg.det(self.gram)

    def bilinear(self, x: Sequence, y: Sequence) -> Fraction:
        gy = linalg.matvec(self.gram, [as_fraction(v) for v in y])
        return sum((as_fraction(a) * b for a, b in zip(x, gy)), Fraction(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.bilinear(x, x)

    def transform(self, basis: Sequence[Sequence]) -> "QuadraticSpace":
        """The restriction of the form to the span of the rows of ``basis``."""
        b = linalg.to_matrix(basis)
        return QuadraticSpace(tuple(tuple(r) for r in linalg.congruent(b, self.gram)))

    def direct_sum(self, other: "QuadraticSpace") -> "QuadraticSpace":
        n, m = self.n, other.n
        z = Fraction(0)
        rows = [list(r) + [z] * m for r in self.gram] + [[z] * n + list(r) for r in other.gram]
        return QuadraticSpace(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Invariants:
    """Classifying data ``(n, d, ram, s_inf)`` of a rational quadratic space.

    ``formal`` marks tuples produced by evaluating the complement tables for a
    value the space does not represent; it is ignored by equality.
    """

    n: int
    d: int
    ram: frozenset = field(default_factory=frozenset)
    s_inf: int = 0
    formal: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ram", frozenset(self.ram))
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if not is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not squarefree")
        if (self.s_inf - self.n) % 2 or abs(self.s_inf) > self.n:
            raise ValueError(f"index {self.s_inf} impossible in dimension {self.n}")
        if len(self.ram) % 2:
            raise ValueError(f"ramified set {self.ram_sorted} has odd size")
        if (INF in self.ram) != real_place_division(self.s_inf):
            raise ValueError("real place inconsistent with the index")
        for v in self.ram:
            if v != INF and (not isinstance(v, int) or v < 2):
                raise ValueError(f"bad place {v!r}")

    @property
    def ram_sorted(self) -> list:
        return sorted_places(self.ram)

    @property
    def finite_ram(self) -> list[int]:
        return [v for v in self.ram_sorted if v != INF]

    @property
    def delta(self) -> int:
        """A representative of the discriminant square class."""
        return self.d

    @property
    def det_class(self) -> int:
        """Square class of det G."""
        return squarefree_part((-1) ** (self.n * (self.n - 1) // 2) * self.d)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "ram": [v for v in self.ram_sorted],
            "s_inf": self.s_inf,
        }
        if self.formal:
            out["formal"] = True
        return out

    @classmethod
    def from_json(cls, data) -> "Invariants":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        ram = frozenset(INF if v in (INF, "∞", "infinity") else int(v) for v in data["ram"])
        return cls(int(data["n"]), int(data["d"]), ram, int(data["s_inf"]))


def real_place_division(s: int) -> bool:
    """Whether the characteristic algebra at R is Hamilton's quaternions."""
    return s % 8 in (3, 4, 5, 6)


def diagonalize(space: QuadraticSpace) -> list[Fraction]:
    """Diagonal entries a₁..aₙ of a form isometric to ``space``."""
    g = [list(r) for r in space.gram]
    n = len(g)
    out = []
    active = list(range(n))
    while active:
        i = next((k for k in active if g[k][k] != 0), None)
        if i is None:
            # all remaining diagonal entries vanish: use e_a + e_b
            a = active[0]
            b = next((k for k in active[1:] if g[a][k] != 0), None)
            if b is None:
                raise DegenerateFormError("the form is degenerate")
            for k in range(n):
                g[a][k] += g[b][k]
            for k in range(n):
                g[k][a] += g[k][b]
            i = a
        piv = g[i][i]
        out.append(piv)
        active.remove(i)
        for r in active:
            f = g[r][i] / piv
            if f:
                for c in range(n):
                    g[r][c] -= f * g[i][c]
                for c in range(n):
                    g[c][r] -= f * g[c][i]
        # the pivot row/column are now orthogonal to the rest
    return out


def discriminant_delta(space: QuadraticSpace) -> tuple[Fraction, int]:
    """``delta = (-1)^(n(n-1)/2) det`` and its squarefree part."""
    n = space.n
    delta = (-1) ** (n * (n - 1) // 2) * space.det
    return delta, squarefree_part(delta)


def signature(space: QuadraticSpace) -> tuple[int, int]:
    diag = diagonalize(space)
    i = sum(1 for a in diag if a > 0)
    return i, len(diag) - i


def index_at_infinity(space: QuadraticSpace) -> int:
    i, j = signature(space)
    return i - j


def hasse_invariant(diag: Sequence, p) -> int:
    """∏_{i<j} (a_i, a_j)_p for a diagonal form."""
    e = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            e *= hilbert(diag[i], diag[j], p)
    return e


# -- local classification through (dim, det, hasse) -------------------------

def _isotropic(m: int, det, eps: int, p) -> bool:
    if m <= 1:
        return False
    if m == 2:
        return xi(-as_fraction(det), p) == 1
    if m == 3:
        return eps == hilbert(-1, -as_fraction(det), p)
    if m == 4:
        return not (xi(det, p) == 1 and eps == -hilbert(-1, -1, p))
    return True


def _exists(m: int, det, eps: int, p) -> bool:
    if m == 0:
        return xi(det, p) == 1 and eps == 1
    if m == 1:
        return eps == 1
    if m == 2:
        return not (xi(-as_fraction(det), p) == 1 and eps == -1)
    return True


def local_core(m: int, det, eps: int, p) -> tuple[int, Fraction, int]:
    """Anisotropic core ``(t, det, hasse)`` of the local form with these invariants."""
    det = as_fraction(det)
    while _isotropic(m, det, eps, p):
        eps *= hilbert(-1, -det, p)
        det = -det
        m -= 2
    return m, det, eps


def _division_from_core(n: int, t: int, core_eps: int) -> bool:
    if n == 1:
        return False
    if n % 2 == 0:
        if t == 2:
            return core_eps == -1
        return t == 4
    return t == 3


def local_invariants(space: QuadraticSpace, p) -> tuple[int, Fraction, int]:
    diag = diagonalize(space)
    det = Fraction(1)
    for a in diag:
        det *= a
    return space.n, det, hasse_invariant(diag, p)


def core_dimension_local(space: QuadraticSpace, p: int) -> int:
    """Dimension of the anisotropic kernel of the space over Q_p."""
    return local_core(*local_invariants(space, p), p)[0]


def candidate_primes(space: QuadraticSpace) -> list[int]:
    """Primes outside which the space is unimodular at an odd prime."""
    return sorted(set(prime_support(*diagonalize(space))) | {2})


def local_division(space: QuadraticSpace, p: int) -> bool:
    n, det, eps = local_invariants(space, p)
    t, _, core_eps = local_core(n, det, eps, p)
    return _division_from_core(n, t, core_eps)


def characteristic_algebra(space: QuadraticSpace) -> frozenset:
    """Places where the characteristic quaternion algebra ramifies."""
    diag = diagonalize(space)
    n = space.n
    det = Fraction(1)
    for a in diag:
        det *= a
    ram = set()
    for p in sorted(set(prime_support(*diag)) | {2}):
        t, _, core_eps = local_core(n, det, hasse_invariant(diag, p), p)
        if _division_from_core(n, t, core_eps):
            ram.add(p)
    s = sum(1 if a > 0 else -1 for a in diag)
    if real_place_division(s):
        ram.add(INF)
    return frozenset(ram)


def invariants(space: QuadraticSpace) -> Invariants:
    _, d = discriminant_delta(space)
    return Invariants(space.n, d, characteristic_algebra(space), index_at_infinity(space))


def core_dimensions(space: QuadraticSpace) -> dict[int, int]:
    """Core dimension at every candidate prime (all others are n mod 2 ... 0 or 1 or 2)."""
    return {p: core_dimension_local(space, p) for p in candidate_primes(space)}


def core_dimension_from_invariants(inv: Invariants, p: int) -> int:
    """Core dimension at p read off from the discriminant and the algebra."""
    division = p in inv.ram
    if inv.n % 2 == 0:
        if xi(inv.d, p) == 1:
            return 4 if division else 0
        return 2
    return 3 if division else 1


def local_hasse(inv: Invariants, p: int) -> int:
    """The Hasse symbol at p of any space with invariants ``inv``."""
    det = inv.det_class
    want = p in inv.ram
    for eps in (1, -1):
        if not _exists(inv.n, det, eps, p):
            continue
        t, _, core_eps = local_core(inv.n, det, eps, p)
        if _division_from_core(inv.n, t, core_eps) == want:
            return eps
    raise ValueError(f"no local space at {p} has invariants {inv}")


def relevant_primes(inv: Invariants, *extra) -> list[int]:
    ps = set(prime_support(2 * inv.d, *extra)) | set(inv.finite_ram)
    return sorted(ps)


def locally_represents(inv: Invariants, q, place) -> bool:
    """Whether the completion at ``place`` represents q."""
    q = as_fraction(q)
    n = inv.n
    if place == INF:
        return inv.s_inf > -n if q > 0 else inv.s_inf < n
    det = inv.det_class
    if n == 1:
        return xi(q * det, place) == 1
    eps = local_hasse(inv, place) * hilbert(det, -q, place)
    return _isotropic(n + 1, -q * det, eps, place)


def represents(inv: Invariants, q) -> bool:
    """Whether every (hence some) space with invariants ``inv`` represents q over Q."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    if inv.n == 1:
        return is_rational_square(q * inv.d)
    if not locally_represents(inv, q, INF):
        return False
    return all(locally_represents(inv, q, p) for p in relevant_primes(inv, q))


def is_isomorphic(a: QuadraticSpace, b: QuadraticSpace) -> bool:
    return invariants(a) == invariants(b)


def represents_ternary(space: QuadraticSpace, q) -> bool:
    """Representability of q by a ternary space via the three local conditions."""
    if space.n != 3:
        raise ValueError("represents_ternary needs a 3-dimensional space")
    q = as_fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    inv = invariants(space)
    if inv.s_inf == 3 and q < 0:
        return False
    if inv.s_inf == -3 and q > 0:
        return False
    return all(xi(inv.d * q, p) != 1 for p in inv.finite_ram)
