"""Invariants of the orthogonal complement of a line.

For ``V = W ⊕ <q>`` the invariants of W are a function of the invariants of V
and the square class of q. :func:`complement_invariants` evaluates that
function place by place; :func:`complement_space` builds W explicitly so the
two can be compared.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .arith import INF, as_fraction, hilbert, prime_support, squarefree_part, xi
from .qspace import Invariants, QuadraticSpace, represents


class IsotropicVectorError(ValueError):
    pass


def _norm_from(x, d: int, p: int) -> bool:
    """Whether x is a norm from Q_p(sqrt d)."""
    return hilbert(d, x, p) == 1


def _split_even(inv: Invariants, q: Fraction, p: int) -> bool:
    if inv.n == 2:
        return True
    in_b = p in inv.ram
    if xi(inv.d, p) == 1:
        return not in_b
    norm = _norm_from(q, inv.d, p)
    return norm != in_b


def _split_odd(inv: Invariants, q: Fraction, p: int) -> bool:
    dq = squarefree_part(inv.d * q)
    in_b = p in inv.ram
    sq = xi(dq, p) == 1
    norm = _norm_from(inv.d, dq, p)
    if not in_b:
        return sq or norm
    if inv.n == 3:
        return not norm
    return not sq and not norm


def _split_real(inv: Invariants, q: Fraction) -> bool:
    s = inv.s_inf % 8
    if inv.n % 2 == 0:
        return s in ((0, 2) if q > 0 else (0, 6))
    return s in ((1, 3) if q > 0 else (1, 7))


def complement_invariants(inv: Invariants, q) -> Invariants:
    """Invariants of W where ``V = W ⊕ <q>`` and V has invariants ``inv``.

    If V does not represent q the tables are still evaluated and the result
    carries ``formal=True``.
    """
    q = as_fraction(q)
    n = inv.n
    if n < 2:
        raise ValueError("the complement needs n >= 2")
    if q == 0:
        raise ValueError("q must be nonzero")
    split = _split_even if n % 2 == 0 else _split_odd
    ram = set()
    for p in prime_support(2 * inv.d, q, *inv.finite_ram):
        if not split(inv, q, p):
            ram.add(p)
    if not _split_real(inv, q):
        ram.add(INF)
    d = squarefree_part((-1) ** (n - 1) * inv.d * q)
    s = inv.s_inf - 1 if q > 0 else inv.s_inf + 1
    formal = not represents(inv, q)
    if formal and (len(ram) % 2 or abs(s) > n - 1):
        # Nothing realizes this tuple; keep the evaluated data without validation.
        out = object.__new__(Invariants)
        for k, v in (("n", n - 1), ("d", d), ("ram", frozenset(ram)), ("s_inf", s), ("formal", True)):
            object.__setattr__(out, k, v)
        return out
    return Invariants(n - 1, d, frozenset(ram), s, formal=formal)


def complement_basis(space: QuadraticSpace, h: Sequence) -> list[list[Fraction]]:
    """Rational basis (rows) of ``{x : phi(x, h) = 0}``."""
    h = [as_fraction(x) for x in h]
    if len(h) != space.n:
        raise ValueError("h has the wrong length")
    if space.norm(h) == 0:
        raise IsotropicVectorError("phi[h] = 0; h must be anisotropic")
    return linalg.left_nullspace_of_column(linalg.matvec(space.gram, h))


def complement_space(space: QuadraticSpace, h: Sequence) -> QuadraticSpace:
    """The space ``(Qh)⊥`` with its restricted form."""
    return space.transform(complement_basis(space, h))
