"""Constructive integer-lattice engine."""

from .enumerate import enumerate_coordinates, enumerate_vectors
from .intmat import elementary_divisors, functional_kernel, hnf, smith_normal_form
from .verify import SectionCheck, SweepResult, sweep, sweep_norm, verify_section_formula
from .zlattice import (
    ZLattice,
    dual,
    find_enlargement,
    index_ideal,
    intersect_hyperplane,
    is_maximal,
    lattice_sum,
    maximal_lattice,
    maximalize,
    orthogonal_sum,
    p_maximal_enlarge,
    phi_h_L,
)

__all__ = [
    "ZLattice", "dual", "index_ideal", "intersect_hyperplane", "is_maximal", "lattice_sum",
    "maximal_lattice", "maximalize", "orthogonal_sum", "p_maximal_enlarge", "phi_h_L",
    "find_enlargement", "enumerate_vectors", "enumerate_coordinates", "hnf",
    "smith_normal_form", "elementary_divisors", "functional_kernel", "verify_section_formula",
    "sweep", "sweep_norm", "SectionCheck", "SweepResult",
]
