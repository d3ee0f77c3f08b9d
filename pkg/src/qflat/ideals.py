"""Discriminant ideals of maximal lattices and the section index formula.

For a maximal lattice L on V, a vector h with ``phi[h] = q`` and a maximal
lattice M on ``W = (Qh)⊥``::

    2q [L~/L] = b(q)^2 [M~/M]          (defines b(q))
    [M / L∩W] = b(q) (2 phi(h, L))^-1

Here ``[X/Y]`` is the index ideal (``|det T|`` for ``Y = T X``). The local
exponent tables for anisotropic spaces are kept separately as an independent
cross-check of ``ord_p b(q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    FractionalIdeal,
    NonSquareIdealError,
    as_fraction,
    factor,
    quadratic_discriminant,
    squarefree_part,
    valuation,
    xi,
)
from .complement import complement_invariants
from .qspace import Invariants, represents


class NotRepresentedError(ValueError):
    """q is not a value of the quadratic form."""


class ContractViolation(ValueError):
    pass


def discriminant_ideal(inv: Invariants) -> FractionalIdeal:
    """``[L~/L]`` for any maximal lattice L on a space with invariants ``inv``."""
    ram = inv.finite_ram
    if inv.n % 2 == 0:
        dk = quadratic_discriminant(inv.d)
        e1 = 1
        for p in ram:
            if dk % p:
                e1 *= p
        return FractionalIdeal.of(dk * e1 * e1)
    a = abs(inv.d)
    e = 1
    for p in ram:
        e *= p
    left = FractionalIdeal.of(Fraction(2 * e * e, a))
    return left.intersect(FractionalIdeal.of(2 * a))


@dataclass(frozen=True)
class DiscriminantData:
    disc_V: FractionalIdeal
    disc_W: FractionalIdeal
    b_q: FractionalIdeal

    def to_json(self) -> dict:
        return {"disc_V": self.disc_V.to_json(), "disc_W": self.disc_W.to_json(),
                "b_q": self.b_q.to_json()}


def discriminant_data(inv: Invariants, q) -> DiscriminantData:
    q = as_fraction(q)
    if inv.n < 2:
        raise ValueError("b(q) needs n >= 2")
    if q == 0:
        raise ValueError("q must be nonzero")
    if not represents(inv, q):
        raise NotRepresentedError(f"{q} is not represented by a space with invariants {inv}")
    disc_v = discriminant_ideal(inv)
    disc_w = discriminant_ideal(complement_invariants(inv, q))
    ratio = FractionalIdeal.of(2 * q) * disc_v / disc_w
    try:
        b = ratio.sqrt_exact()
    except NonSquareIdealError as exc:
        # q is represented, so this can only be an implementation fault
        raise ContractViolation(f"2q[L~/L][M~/M]^-1 = {ratio} is not a square") from exc
    return DiscriminantData(disc_v, disc_w, b)


def b_of_q(inv: Invariants, q) -> FractionalIdeal:
    """The ideal b(q) with ``2q [L~/L] = b(q)^2 [M~/M]``."""
    return discriminant_data(inv, q).b_q


def b_scaling_check(inv: Invariants, q, c) -> bool:
    """``b(c^2 q) == |c| b(q)``."""
    q, c = as_fraction(q), as_fraction(c)
    return b_of_q(inv, c * c * q) == FractionalIdeal.of(c) * b_of_q(inv, q)


@dataclass(frozen=True)
class SectionReport:
    index_ideal: FractionalIdeal
    two_phi_hL: FractionalIdeal
    b_q: FractionalIdeal
    disc_V: FractionalIdeal
    disc_W: FractionalIdeal
    maximal: bool
    maximal_by_norm: bool

    def to_json(self) -> dict:
        return {
            "index_ideal": self.index_ideal.to_json(),
            "two_phi_hL": self.two_phi_hL.to_json(),
            "b_q": self.b_q.to_json(),
            "disc_V": self.disc_V.to_json(),
            "disc_W": self.disc_W.to_json(),
            "maximal": self.maximal,
            "maximal_by_norm": self.maximal_by_norm,
        }


def section_ideal(inv: Invariants, q, two_phi_hL) -> SectionReport:
    """``[M/L∩W]`` from b(q) and the ideal ``2 phi(h, L)``."""
    q = as_fraction(q)
    if not isinstance(two_phi_hL, FractionalIdeal):
        two_phi_hL = FractionalIdeal.of(two_phi_hL)
    data = discriminant_data(inv, q)
    if not two_phi_hL.contains(data.b_q):
        raise ContractViolation(f"b(q) = {data.b_q} is not contained in 2phi(h,L) = {two_phi_hL}")
    index = data.b_q / two_phi_hL
    by_norm = (FractionalIdeal.of(q) / two_phi_hL ** 2
               == data.disc_W / (FractionalIdeal.of(2) * data.disc_V))
    return SectionReport(index, two_phi_hL, data.b_q, data.disc_V, data.disc_W,
                         index == FractionalIdeal.unit(), by_norm)


# -- local tables for anisotropic spaces -------------------------------------

@dataclass(frozen=True)
class LocalData:
    """Local quantities at p for a space with squarefree discriminant ``delta``."""

    p: int
    t: int
    ord_delta: int
    nu: int
    kappa: int
    xi_delta: int
    xi_delta_q: int
    ord_delta_q: int
    d_delta: int
    d_delta_q: int

    @classmethod
    def of(cls, t: int, delta: int, q, p: int) -> "LocalData":
        q = as_fraction(q)
        if not 1 <= t <= 4:
            raise ValueError(f"core dimension {t} out of range")
        delta = squarefree_part(delta)
        dq = squarefree_part(delta * q)
        return cls(p, t, valuation(delta, p), valuation(q, p), valuation(2, p),
                   xi(delta, p), xi(dq, p), valuation(delta * q, p),
                   _d_exponent(delta, p), _d_exponent(dq, p))


def _d_exponent(b: int, p: int) -> int:
    """Exponent of p in the discriminant of Q_p(sqrt b); 1 for the unramified field."""
    s = xi(b, p)
    if s == 1:
        return 0
    if s == -1:
        return 1
    return factor(quadratic_discriminant(b)).get(p, 0)


def lambda_p_anisotropic(loc: LocalData) -> int:
    """The exponent lambda_p(q) when the space is anisotropic at p."""
    t, nu, k = loc.t, loc.nu, loc.kappa
    if t == 1:
        if (nu + loc.ord_delta) % 2:
            raise ValueError("q is not represented by the binary-free core")
        return k + (nu + loc.ord_delta) // 2
    if t == 2:
        return (nu + loc.d_delta) // 2
    if t == 3:
        if loc.ord_delta_q % 2:
            return (nu - loc.ord_delta + 1) // 2
        if loc.xi_delta_q == 0:
            return k + 1 + (nu - loc.ord_delta - loc.d_delta_q) // 2
        if loc.xi_delta_q == -1:
            return k + loc.ord_delta_q // 2
        raise ValueError("delta*q is a local square; the core cannot be anisotropic of dimension 3")
    return (nu + 1) // 2


def local_disc_tables(loc: LocalData) -> tuple[int, int]:
    """Exponents of ``[L~/L]_p`` and ``[M~/M]_p`` for an anisotropic space at p."""
    t, nu, k = loc.t, loc.nu, loc.kappa
    even = nu % 2 == 0
    if t == 2:
        if loc.ord_delta == 1:
            dl = 2 * k + 1
            dm = k + 1 if even else k
        else:
            if loc.xi_delta == 0:
                dl = loc.d_delta
            elif loc.xi_delta == -1:
                dl = 0 if even else 2
            else:
                raise ValueError("binary anisotropic space with square discriminant")
            dm = k if even else k + 1
        return dl, dm
    if t == 3:
        dl = k + 1 if loc.ord_delta == 1 else k + 2
        if loc.ord_delta_q % 2:
            dm = 2 * k + 1
        elif loc.xi_delta_q == 0:
            dm = loc.d_delta_q
        elif loc.xi_delta_q == -1:
            dm = 0 if loc.ord_delta == 1 else 2
        else:
            raise ValueError("delta*q is a local square; no anisotropic ternary case applies")
        return dl, dm
    if t == 4:
        return 2, (k + 2 if even else k + 1)
    raise ValueError(f"tables cover t in 2..4, got {t}")
