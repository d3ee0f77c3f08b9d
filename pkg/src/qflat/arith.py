"""Exact rational and p-adic primitives.

Everything here works over Q with arbitrary-precision integers: p-adic
valuations, square classes, the three-valued square-class symbol ``xi``,
Hilbert symbols and fractional Z-ideals (represented by their positive
rational generator).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Union

from sympy import factorint

Rational = Union[int, Fraction]

INF = "inf"
"""The real place of Q."""


class NonSquareIdealError(ValueError):
    """Raised when an exact square root is requested of a non-square ideal."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Rational) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=4096)
def _factor_int(m: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(m).items()))


def factor(x: Rational) -> dict[int, int]:
    """Prime factorization of a nonzero rational as ``{p: ord_p(x)}``.

    The sign is dropped.
    """
    x = as_fraction(x)
    if x == 0:
        raise ValueError("cannot factor zero")
    out: dict[int, int] = {}
    for p, e in _factor_int(abs(x.numerator)):
        out[p] = e
    for p, e in _factor_int(x.denominator):
        out[p] = out.get(p, 0) - e
    return out


def prime_support(*xs: Rational) -> list[int]:
    """Sorted list of primes dividing the numerator or denominator of any x."""
    ps: set[int] = set()
    for x in xs:
        ps.update(factor(x))
    return sorted(ps)


def valuation(x: Rational, p: int) -> int:
    """The p-adic valuation of a nonzero rational."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rational, p: int) -> Fraction:
    """``x / p**valuation(x, p)``."""
    x = as_fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def squarefree_part(x: Rational) -> int:
    """The unique squarefree integer s with x = s * c**2 for a rational c."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    s = -1 if x < 0 else 1
    for p, e in factor(x).items():
        if e % 2:
            s *= p
    return s


def is_squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in factor(d).values())


def is_rational_square(x: Rational) -> bool:
    x = as_fraction(x)
    if x <= 0:
        return False
    return (isqrt(x.numerator) ** 2 == x.numerator
            and isqrt(x.denominator) ** 2 == x.denominator)


def _unit_residue(u: Fraction, m: int) -> int:
    # u is a unit at every prime dividing m
    return (u.numerator * pow(u.denominator, -1, m)) % m


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_local_square(b: Rational, p) -> bool:
    """Whether b is a square in Q_p (or in R for ``p == INF``)."""
    b = as_fraction(b)
    if p == INF:
        return b > 0
    return xi(b, p) == 1


def xi(b: Rational, p: int) -> int:
    """Square-class symbol of b at the prime p.

    Returns 1 if b is a square in Q_p, -1 if Q_p(sqrt b) is the unramified
    quadratic extension and 0 if Q_p(sqrt b) is ramified.
    """
    b = as_fraction(b)
    if b == 0:
        raise ValueError("xi is undefined at zero")
    e = valuation(b, p)
    if e % 2:
        return 0
    u = unit_part(b, p)
    if p == 2:
        r = _unit_residue(u, 8)
        if r == 1:
            return 1
        if r == 5:
            return -1
        return 0
    return legendre(_unit_residue(u, p), p)


def hilbert(a: Rational, b: Rational, place) -> int:
    """Hilbert symbol (a, b)_v for v a prime or ``INF``."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = unit_part(a, p), unit_part(b, p)
    if p == 2:
        u8, v8 = _unit_residue(u, 8), _unit_residue(v, 8)
        eps_u, eps_v = ((u8 - 1) // 2) % 2, ((v8 - 1) // 2) % 2
        om_u, om_v = ((u8 * u8 - 1) // 8) % 2, ((v8 * v8 - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    up, vp = _unit_residue(u, p), _unit_residue(v, p)
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(up, p)
    if alpha % 2:
        s *= legendre(vp, p)
    return s


def is_local_norm(x: Rational, d: Rational, place) -> bool:
    """Whether x is a norm from Q_v(sqrt d); always true when d is a local square."""
    return hilbert(d, x, place) == 1


def quadratic_discriminant(d: int) -> int:
    """Absolute discriminant of Q(sqrt d) for squarefree d (1 when d == 1)."""
    if d == 1:
        return 1
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    return abs(d) if d % 4 == 1 else 4 * abs(d)


def sorted_places(places: Iterable) -> list:
    """Primes ascending, the real place last."""
    return sorted(places, key=lambda v: (v == INF, 0 if v == INF else v))


def _rat_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


@dataclass(frozen=True, order=False)
class FractionalIdeal:
    """The fractional ideal ``generator * Z`` of Q, generator > 0."""

    generator: Fraction

    def __post_init__(self):
        g = as_fraction(self.generator)
        if g == 0:
            raise ValueError("the zero ideal is not a fractional ideal")
        object.__setattr__(self, "generator", abs(g))

    @classmethod
    def of(cls, x) -> "FractionalIdeal":
        return cls(as_fraction(x))

    @classmethod
    def unit(cls) -> "FractionalIdeal":
        return cls(Fraction(1))

    @classmethod
    def from_valuations(cls, vals: dict[int, int]) -> "FractionalIdeal":
        g = Fraction(1)
        for p, e in vals.items():
            g *= Fraction(p) ** e
        return cls(g)

    @classmethod
    def generated_by(cls, xs: Iterable[Rational]) -> "FractionalIdeal":
        """The ideal generated by the given rationals (zeros ignored)."""
        g = Fraction(0)
        for x in xs:
            x = as_fraction(x)
            if x:
                g = abs(x) if g == 0 else _rat_gcd(g, abs(x))
        if g == 0:
            raise ValueError("all generators are zero")
        return cls(g)

    def ord(self, p: int) -> int:
        return valuation(self.generator, p)

    def valuations(self) -> dict[int, int]:
        return {p: e for p, e in factor(self.generator).items() if e}

    def __mul__(self, other):
        if isinstance(other, FractionalIdeal):
            return FractionalIdeal(self.generator * other.generator)
        return FractionalIdeal(self.generator * as_fraction(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FractionalIdeal):
            return FractionalIdeal(self.generator / other.generator)
        return FractionalIdeal(self.generator / as_fraction(other))

    def __pow__(self, k: int):
        return FractionalIdeal(self.generator ** k)

    def inverse(self) -> "FractionalIdeal":
        return FractionalIdeal(1 / self.generator)

    def sum(self, other: "FractionalIdeal") -> "FractionalIdeal":
        """I + J: minimum of valuations."""
        return FractionalIdeal(_rat_gcd(self.generator, other.generator))

    def intersect(self, other: "FractionalIdeal") -> "FractionalIdeal":
        """I ∩ J: maximum of valuations."""
        a, b = self.generator, other.generator
        return FractionalIdeal(a * b / _rat_gcd(a, b))

    def is_integral(self) -> bool:
        return self.generator.denominator == 1

    def contains(self, other: "FractionalIdeal") -> bool:
        """Whether ``other ⊆ self``."""
        return (other.generator / self.generator).denominator == 1

    def is_square(self) -> bool:
        g = self.generator
        return (isqrt(g.numerator) ** 2 == g.numerator
                and isqrt(g.denominator) ** 2 == g.denominator)

    def sqrt_exact(self) -> "FractionalIdeal":
        if not self.is_square():
            raise NonSquareIdealError(f"{self} is not the square of an ideal")
        g = self.generator
        return FractionalIdeal(Fraction(isqrt(g.numerator), isqrt(g.denominator)))

    def __str__(self) -> str:
        return format_rational(self.generator)

    def __repr__(self) -> str:
        return f"FractionalIdeal({self})"

    def to_json(self) -> str:
        return format_rational(self.generator)
