"""Z-lattices in rational quadratic spaces.

A lattice is a set of linearly independent rational rows inside an ambient
:class:`QuadraticSpace`. Index ideals follow the convention
``index_ideal(X, Y) = |det T|`` where ``Y.basis = T · X.basis``, so that for
``Y ⊆ X`` the result is the integral ideal ``[X/Y]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .. import linalg
from ..arith import FractionalIdeal, as_fraction, factor, format_rational, prime_support
from ..qspace import QuadraticSpace
from .intmat import functional_kernel, hnf_rational, scale_to_int


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ZLattice:
    ambient: QuadraticSpace
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        b = tuple(tuple(as_fraction(x) for x in row) for row in self.basis)
        if not b or any(len(r) != self.ambient.n for r in b):
            raise LatticeError("basis rows must live in the ambient space")
        if linalg.rank(b) != len(b):
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def standard(cls, space: QuadraticSpace) -> "ZLattice":
        n = space.n
        return cls(space, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_generators(cls, space: QuadraticSpace, gens: Iterable[Sequence]) -> "ZLattice":
        return cls(space, tuple(tuple(r) for r in hnf_rational(list(gens))))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in linalg.congruent(self.basis, self.ambient.gram))

    @property
    def space(self) -> QuadraticSpace:
        """The span of the lattice with the restricted form."""
        return QuadraticSpace(self.gram)

    def is_integral(self) -> bool:
        g = self.gram
        return all(g[i][i].denominator == 1 for i in range(len(g))) and all(
            (2 * x).denominator == 1 for row in g for x in row)

    def canonical(self) -> "ZLattice":
        return ZLattice.from_generators(self.ambient, self.basis)

    def same_module(self, other: "ZLattice") -> bool:
        return self.canonical().basis == other.canonical().basis

    def contains_vector(self, v: Sequence) -> bool:
        try:
            coords = linalg.solve_left(self.basis, [v])[0]
        except ValueError:
            return False
        return all(c.denominator == 1 for c in coords)

    def coordinates(self, v: Sequence) -> list[Fraction]:
        return linalg.solve_left(self.basis, [v])[0]

    def discriminant(self) -> FractionalIdeal:
        """``[L~/L] = |det(2 gram)|``."""
        return FractionalIdeal.of(linalg.det(linalg.scale(self.gram, 2)))

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(),
                "basis": [[format_rational(x) for x in row] for row in self.basis]}

    @classmethod
    def from_json(cls, data) -> "ZLattice":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(QuadraticSpace.from_json(data["ambient"]),
                   tuple(tuple(as_fraction(x) for x in r) for r in data["basis"]))


def dual(lat: ZLattice) -> ZLattice:
    """``{x in span : 2 phi(x, L) ⊆ Z}``."""
    two_g = linalg.scale(lat.gram, 2)
    if linalg.det(two_g) == 0:
        raise LatticeError("the form is degenerate on the span of the lattice")
    return ZLattice(lat.ambient, tuple(tuple(r) for r in linalg.matmul(linalg.inverse(two_g), lat.basis)))


def transition(x: ZLattice, y: ZLattice) -> list[list[Fraction]]:
    """T with ``y.basis = T · x.basis``."""
    if x.rank != y.rank:
        raise LatticeError("lattices span spaces of different dimension")
    try:
        return linalg.solve_left(x.basis, y.basis)
    except ValueError as exc:
        raise LatticeError("lattices do not span the same space") from exc


def index_ideal(x: ZLattice, y: ZLattice) -> FractionalIdeal:
    """``[X/Y] = |det T|`` for ``Y = T X``."""
    return FractionalIdeal.of(linalg.det(transition(x, y)))


def lattice_sum(a: ZLattice, b: ZLattice) -> ZLattice:
    return ZLattice.from_generators(a.ambient, list(a.basis) + list(b.basis))


def orthogonal_sum(a: ZLattice, b: ZLattice) -> ZLattice:
    """``A ⊕ B`` inside ``A.span ⊕ B.span`` (a new ambient space)."""
    ambient = a.space.direct_sum(b.space)
    ka, kb = a.rank, b.rank
    rows = [tuple(Fraction(int(i == j)) for j in range(ka + kb)) for i in range(ka + kb)]
    return ZLattice(ambient, tuple(rows))


def phi_h_L(h: Sequence, lat: ZLattice) -> FractionalIdeal:
    """The ideal generated by ``phi(h, b)`` over the basis of L."""
    h = [as_fraction(x) for x in h]
    vals = linalg.matvec(lat.basis, linalg.matvec(lat.ambient.gram, h))
    return FractionalIdeal.generated_by(vals)


def intersect_hyperplane(lat: ZLattice, h: Sequence) -> ZLattice:
    """``L ∩ (Qh)⊥``."""
    h = [as_fraction(x) for x in h]
    if lat.ambient.norm(h) == 0:
        raise LatticeError("phi[h] = 0")
    vals = linalg.matvec(lat.basis, linalg.matvec(lat.ambient.gram, h))
    ints, _ = scale_to_int([vals])
    kern = functional_kernel(ints[0])
    return ZLattice(lat.ambient, tuple(tuple(r) for r in linalg.matmul(kern, lat.basis)))


# -- maximal lattices ---------------------------------------------------------

def _radical_mod_p(a: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the kernel of the symmetric matrix a over F_p."""
    k = len(a)
    m = [[x % p for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, k) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(k):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    out = []
    for fcol in free:
        v = [0] * k
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fcol]) % p
        out.append(v)
    return out


def find_enlargement(lat: ZLattice, p: int) -> list[Fraction] | None:
    """A vector x ∈ p⁻¹L \\ L with ``L + Zx`` integral, or None.

    Scans the projective points of the radical of ``2 gram mod p`` in a fixed
    order; such x exists iff L is not maximal at p.
    """
    two_g, den = scale_to_int(linalg.scale(lat.gram, 2))
    if den != 1:
        raise LatticeError("lattice is not integral")
    rad = _radical_mod_p(two_g, p)
    r = len(rad)
    k = lat.rank
    for coeffs in _projective_points(r, p):
        c = [sum(coeffs[j] * rad[j][i] for j in range(r)) % p for i in range(k)]
        val = sum(c[i] * two_g[i][j] * c[j] for i in range(k) for j in range(k))
        # val = 2 Q(c); need Q(c) ≡ 0 mod p^2
        if val % (2 * p * p) == 0:
            return linalg.vecmat([Fraction(ci, p) for ci in c], lat.basis)
    return None


def _projective_points(r: int, p: int):
    for lead in range(r):
        for tail in itertools.product(range(p), repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


def p_maximal_enlarge(lat: ZLattice, p: int) -> ZLattice:
    """Enlarge an integral lattice at p until it is p-maximal."""
    if not lat.is_integral():
        raise LatticeError("lattice is not integral")
    cur = lat
    while True:
        x = find_enlargement(cur, p)
        if x is None:
            return cur
        cur = ZLattice.from_generators(cur.ambient, list(cur.basis) + [x])


def maximalize(lat: ZLattice) -> ZLattice:
    """A maximal integral lattice containing the integral lattice ``lat``."""
    disc = lat.discriminant().generator
    cur = lat
    for p in prime_support(disc):
        cur = p_maximal_enlarge(cur, p)
    return cur


def integral_start(space: QuadraticSpace) -> ZLattice:
    """``D · Z^n`` for the least D making it integral."""
    g = space.gram
    n = space.n
    need = 1
    for i in range(n):
        for j in range(n):
            x = g[i][j] if i == j else 2 * g[i][j]
            need = lcm(need, x.denominator)
    # need | D^2: take D with D^2 divisible by need
    d = 1
    for p, e in factor(need).items():
        d *= p ** ((e + 1) // 2)
    rows = tuple(tuple(Fraction(d * int(i == j)) for j in range(n)) for i in range(n))
    return ZLattice(space, rows)


def maximal_lattice(space: QuadraticSpace) -> ZLattice:
    """A maximal integral lattice on ``space``."""
    return maximalize(integral_start(space))


def is_maximal(lat: ZLattice) -> bool:
    if not lat.is_integral():
        return False
    disc = lat.discriminant().generator
    return all(find_enlargement(lat, p) is None for p in prime_support(disc))


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
