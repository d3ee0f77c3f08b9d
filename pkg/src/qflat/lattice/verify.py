"""Constructive check of the section formula ``[M/L∩W] = b(q)(2 phi(h,L))^-1``.

The constructive side never consults the invariant tables: it builds a
maximal lattice L, intersects with the hyperplane, enlarges ``L∩W`` to a
maximal lattice M of W and takes the index ideal of the two bases.

Sweeps over all of ``L[q]`` use the lattice identity

    [(L∩W)~ / L∩W] = [L~/L] · 2q / g^2,     2 phi(h, L) = gZ,

valid because ``L∩W`` is the kernel of the surjection ``x ↦ 2phi(x,h)/g`` of L
onto Z. Then ``[M/L∩W]^2 = [(L∩W)~/L∩W] / [M~/M]`` with ``[M~/M]`` taken from
an explicitly constructed M. Every class of g is also checked by the fully
explicit construction on a deterministic sample of vectors.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..arith import FractionalIdeal, as_fraction
from ..ideals import SectionReport, section_ideal
from ..qspace import Invariants, QuadraticSpace, invariants
from . import enumerate as _enum
from .zlattice import (
    ZLattice,
    index_ideal,
    intersect_hyperplane,
    maximal_lattice,
    maximalize,
    phi_h_L,
)


@dataclass(frozen=True)
class SectionCheck:
    h: tuple[Fraction, ...]
    q: Fraction
    two_phi_hL: FractionalIdeal
    formula: SectionReport
    oracle_index: FractionalIdeal
    oracle_disc_L: FractionalIdeal
    oracle_disc_M: FractionalIdeal
    oracle_disc_LW: FractionalIdeal
    oracle_maximal: bool

    @property
    def match(self) -> bool:
        return (self.formula.index_ideal == self.oracle_index
                and self.formula.disc_V == self.oracle_disc_L
                and self.formula.disc_W == self.oracle_disc_M
                and self.formula.maximal == self.oracle_maximal)

    def to_json(self) -> dict:
        return {
            "h": [str(x) for x in self.h],
            "q": str(self.q),
            "two_phi_hL": self.two_phi_hL.to_json(),
            "formula": self.formula.to_json(),
            "oracle": {
                "index_ideal": self.oracle_index.to_json(),
                "disc_L": self.oracle_disc_L.to_json(),
                "disc_M": self.oracle_disc_M.to_json(),
                "disc_L_cap_W": self.oracle_disc_LW.to_json(),
                "maximal": self.oracle_maximal,
            },
            "match": self.match,
        }


def section_oracle(lat: ZLattice, h: Sequence) -> tuple[ZLattice, ZLattice, FractionalIdeal]:
    """``(L∩W, M, [M/L∩W])`` by explicit construction."""
    lw = intersect_hyperplane(lat, h)
    m = maximalize(lw)
    return lw, m, index_ideal(m, lw)


def verify_section_formula(space: QuadraticSpace, h: Sequence, lat: ZLattice | None = None,
                           inv: Invariants | None = None) -> SectionCheck:
    """Compare the formula for ``[M/L∩W]`` with an explicit construction."""
    h = tuple(as_fraction(x) for x in h)
    lat = lat if lat is not None else maximal_lattice(space)
    inv = inv if inv is not None else invariants(space)
    q = space.norm(h)
    two_phi = phi_h_L(h, lat) * 2
    formula = section_ideal(inv, q, two_phi)
    lw, m, idx = section_oracle(lat, h)
    return SectionCheck(h, q, two_phi, formula, idx, lat.discriminant(), m.discriminant(),
                        lw.discriminant(), idx == FractionalIdeal.unit())


# -- sweeps over L[q] ----------------------------------------------------------

@dataclass
class ClassSummary:
    """All h in L[q] sharing ``2 phi(h, L) = gZ``."""

    g: int
    count: int
    formula_index: FractionalIdeal
    oracle_index: FractionalIdeal
    sampled: int = 0
    sample_failures: list = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.formula_index == self.oracle_index and not self.sample_failures


@dataclass
class SweepResult:
    q: Fraction
    count: int
    b_q: FractionalIdeal
    disc_L: FractionalIdeal
    disc_M: FractionalIdeal
    classes: dict[int, ClassSummary]

    @property
    def match(self) -> bool:
        return all(c.match for c in self.classes.values())

    def rows(self) -> list[dict]:
        out = []
        for g in sorted(self.classes):
            c = self.classes[g]
            out.append({
                "q": str(self.q),
                "phi_h_L": str(FractionalIdeal.of(Fraction(g, 2))),
                "count": c.count,
                "formula": c.formula_index.to_json(),
                "oracle": c.oracle_index.to_json(),
                "sampled": c.sampled,
                "match": c.match,
            })
        return out


def _two_gram_int(lat: ZLattice) -> np.ndarray:
    g2 = [[2 * x for x in row] for row in lat.gram]
    if any(x.denominator != 1 for row in g2 for x in row):
        raise ValueError("lattice is not integral")
    return np.array([[int(x) for x in row] for row in g2], dtype=np.int64)


def coordinate_gcds(coords: np.ndarray, two_gram: np.ndarray) -> np.ndarray:
    """For each coordinate row a, the gcd of the entries of ``(2 gram) a``."""
    if coords.dtype == object:
        vals = coords.dot(two_gram.astype(object))
        return np.array([int(np.gcd.reduce([int(v) for v in row])) for row in vals], dtype=object)
    out = np.empty(len(coords), dtype=np.int64)
    step = 1 << 20
    for start in range(0, len(coords), step):
        block = coords[start:start + step] @ two_gram
        out[start:start + step] = np.gcd.reduce(np.abs(block), axis=1)
    return out


def _sample_indices(n: int, k: int) -> list[int]:
    if n <= k:
        return list(range(n))
    return sorted({round(i * (n - 1) / (k - 1)) for i in range(k)}) if k > 1 else [0]


def sweep_norm(space: QuadraticSpace, q, lat: ZLattice | None = None, inv: Invariants | None = None,
               samples: int = 3) -> SweepResult:
    """Check the section formula for every h in L[q] (L positive definite)."""
    q = as_fraction(q)
    lat = lat if lat is not None else maximal_lattice(space)
    inv = inv if inv is not None else invariants(space)
    coords = _enum.enumerate_coordinates(lat.gram, q)
    if len(coords) == 0:
        raise ValueError(f"L[{q}] is empty")
    two_gram = _two_gram_int(lat)
    gcds = coordinate_gcds(coords, two_gram)
    disc_l = lat.discriminant()

    first = _enum.to_ambient(lat, coords[0])
    _, m0, _ = section_oracle(lat, first)
    disc_m = m0.discriminant()

    classes: dict[int, ClassSummary] = {}
    b_q = None
    values, counts = np.unique(gcds, return_counts=True)
    for g, cnt in zip(values.tolist(), counts.tolist()):
        g = int(g)
        rep = section_ideal(inv, q, FractionalIdeal.of(g))
        b_q = rep.b_q
        disc_lw = disc_l * FractionalIdeal.of(2 * q) / FractionalIdeal.of(g * g)
        oracle = (disc_lw / disc_m).sqrt_exact()
        summary = ClassSummary(g, int(cnt), rep.index_ideal, oracle)
        idx = np.nonzero(gcds == g)[0]
        for i in _sample_indices(len(idx), samples):
            h = _enum.to_ambient(lat, coords[idx[i]])
            lw, m, explicit = section_oracle(lat, h)
            summary.sampled += 1
            if (explicit != oracle or lw.discriminant() != disc_lw
                    or m.discriminant() != disc_m):
                summary.sample_failures.append([str(x) for x in h])
        classes[g] = summary
    return SweepResult(q, len(coords), b_q, disc_l, disc_m, classes)


def sweep(space: QuadraticSpace, qs: Sequence, samples: int = 3, threads: int | None = None) -> list[SweepResult]:
    """:func:`sweep_norm` for several q, results in the order of ``qs``."""
    lat = maximal_lattice(space)
    inv = invariants(space)
    n = threads or _enum.thread_count()
    if n <= 1:
        return [sweep_norm(space, q, lat, inv, samples) for q in qs]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(lambda q: sweep_norm(space, q, lat, inv, samples), qs))
