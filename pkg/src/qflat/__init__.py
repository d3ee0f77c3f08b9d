"""Exact invariants of rational quadratic spaces, hyperplane sections of
maximal lattices, and a constructive lattice oracle to check them."""

from .arith import INF, FractionalIdeal, hilbert, valuation, xi
from .complement import complement_invariants, complement_space
from .ideals import (
    b_of_q,
    b_scaling_check,
    discriminant_ideal,
    lambda_p_anisotropic,
    local_disc_tables,
    section_ideal,
)
from .qspace import (
    Invariants,
    QuadraticSpace,
    characteristic_algebra,
    core_dimension_local,
    diagonalize,
    discriminant_delta,
    invariants,
    is_isomorphic,
    represents,
    represents_ternary,
    signature,
)

__version__ = "0.1.0"

__all__ = [
    "INF", "FractionalIdeal", "hilbert", "valuation", "xi",
    "complement_invariants", "complement_space",
    "b_of_q", "b_scaling_check", "discriminant_ideal", "lambda_p_anisotropic",
    "local_disc_tables", "section_ideal",
    "Invariants", "QuadraticSpace", "characteristic_algebra", "core_dimension_local",
    "diagonalize", "discriminant_delta", "invariants", "is_isomorphic", "represents",
    "represents_ternary", "signature",
]
