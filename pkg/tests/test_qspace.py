import itertools
import random
from fractions import Fraction

import pytest

from helpers import random_definite_space, rational_representation_search
from qflat import linalg
from qflat.arith import INF, is_rational_square
from qflat.qspace import (
    DegenerateFormError,
    Invariants,
    QuadraticSpace,
    candidate_primes,
    characteristic_algebra,
    core_dimension_from_invariants,
    core_dimension_local,
    diagonalize,
    hasse_invariant,
    invariants,
    is_isomorphic,
    local_hasse,
    locally_represents,
    represents,
    represents_ternary,
    signature,
)


@pytest.mark.parametrize("n, expected", [
    (1, Invariants(1, 1, frozenset(), 1)),
    (6, Invariants(6, -1, frozenset({2, INF}), 6)),
    (7, Invariants(7, -1, frozenset(), 7)),
    (8, Invariants(8, 1, frozenset(), 8)),
])
def test_sums_of_squares(n, expected):
    assert invariants(QuadraticSpace.identity(n)) == expected


def test_sum_of_seven_squares_is_complement_in_eight():
    from qflat.complement import complement_invariants
    seven = invariants(QuadraticSpace.identity(7))
    assert complement_invariants(invariants(QuadraticSpace.identity(8)), 1) == seven


def test_degenerate_form_is_rejected():
    with pytest.raises(DegenerateFormError):
        QuadraticSpace([[1, 1], [1, 1]])


def test_gram_must_be_symmetric():
    with pytest.raises(ValueError):
        QuadraticSpace([[1, 2], [0, 1]])


def test_json_round_trip():
    space = QuadraticSpace([[2, Fraction(1, 2)], [Fraction(1, 2), 3]])
    assert QuadraticSpace.from_json(space.to_json()) == space
    inv = invariants(space)
    assert Invariants.from_json(inv.to_json()) == inv


def test_hyperbolic_plane():
    hp = QuadraticSpace.hyperbolic_plane()
    assert signature(hp) == (1, 1)
    assert invariants(hp) == Invariants(2, 1, frozenset(), 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sum_of_four_squares_splits_at_odd_primes(p):
    assert core_dimension_local(QuadraticSpace.identity(4), p) == 0


def test_sum_of_four_squares_is_anisotropic_at_two():
    # no solution of x1^2 + ... + x4^2 = 0 mod 16 with some x_i odd
    for xs in itertools.product(range(16), repeat=4):
        if any(x % 2 for x in xs):
            assert sum(x * x for x in xs) % 16 != 0
    assert core_dimension_local(QuadraticSpace.identity(4), 2) == 4
    assert 2 in characteristic_algebra(QuadraticSpace.identity(4))


def test_explicit_isometry_of_binary_forms():
    a = QuadraticSpace.diagonal([1, 1])
    b = QuadraticSpace.diagonal([2, 2])
    # (x, y) -> (x + y, x - y) carries <1,1> onto <2,2>
    t = [[1, 1], [1, -1]]
    assert a.transform(t) == b
    assert is_isomorphic(a, b)


def test_signature_separates_forms():
    a = QuadraticSpace.identity(8)
    b = QuadraticSpace.hyperbolic_plane().direct_sum(QuadraticSpace.identity(6))
    assert not is_isomorphic(a, b)


def random_unimodular(rng, n):
    m = linalg.identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        f = rng.randint(-2, 2)
        m = [list(r) for r in m]
        m[i] = [x + f * y for x, y in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return m


def test_invariants_are_basis_independent():
    rng = random.Random(7)
    for _ in range(40):
        space = random_definite_space(rng)
        u = random_unimodular(rng, space.n)
        assert abs(linalg.det(u)) == 1
        assert invariants(space.transform(u)) == invariants(space)


def test_diagonalize_preserves_det_up_to_squares():
    rng = random.Random(8)
    for _ in range(40):
        space = random_definite_space(rng)
        prod = Fraction(1)
        for a in diagonalize(space):
            prod *= a
        assert is_rational_square(prod / space.det)


def test_core_dimension_two_routes_agree():
    rng = random.Random(9)
    for _ in range(60):
        space = random_definite_space(rng)
        inv = invariants(space)
        for p in candidate_primes(space) + [3, 5, 7]:
            t = core_dimension_local(space, p)
            assert t % 2 == space.n % 2
            assert t == core_dimension_from_invariants(inv, p), (space.gram, p)


def test_local_hasse_recovers_diagonal_symbol():
    rng = random.Random(10)
    for _ in range(60):
        space = random_definite_space(rng)
        inv = invariants(space)
        diag = diagonalize(space)
        for p in candidate_primes(space):
            assert local_hasse(inv, p) == hasse_invariant(diag, p)


def test_ramified_sets_have_even_size():
    rng = random.Random(11)
    for _ in range(100):
        assert len(characteristic_algebra(random_definite_space(rng))) % 2 == 0


@pytest.mark.parametrize("q, expected", [(7, False), (3, True), (-1, False), (1, True), (Fraction(7, 4), False)])
def test_three_squares(q, expected):
    assert represents_ternary(QuadraticSpace.identity(3), q) is expected


def test_represents_ternary_requires_dimension_three():
    with pytest.raises(ValueError):
        represents_ternary(QuadraticSpace.identity(4), 1)


def test_represents_ternary_against_search():
    for diag in itertools.combinations_with_replacement([1, 2, 3, 5, 6, 7], 3):
        space = QuadraticSpace.diagonal(diag)
        for q in range(1, 25):
            formula = represents_ternary(space, q)
            found = rational_representation_search(list(diag), q, 8)
            if found:
                assert formula, (diag, q)
            elif formula:
                # a larger denominator is sometimes needed
                assert rational_representation_search(list(diag), q, 40), (diag, q)


def test_general_represents_matches_ternary_test():
    for diag in itertools.combinations_with_replacement([1, 2, 3, 5], 3):
        space = QuadraticSpace.diagonal(diag)
        inv = invariants(space)
        for q in list(range(1, 20)) + [-1, -3]:
            assert represents(inv, q) == represents_ternary(space, q)


def test_every_value_of_the_form_is_represented():
    rng = random.Random(12)
    for _ in range(40):
        space = random_definite_space(rng)
        inv = invariants(space)
        h = [rng.randint(-3, 3) for _ in range(space.n)]
        if any(h):
            q = space.norm(h)
            assert represents(inv, q)
            assert all(locally_represents(inv, q, p) for p in candidate_primes(space))


@pytest.mark.parametrize("kwargs", [
    dict(n=2, d=2, ram={3}, s_inf=2),          # odd ramified set
    dict(n=2, d=4, ram=set(), s_inf=2),        # d not squarefree
    dict(n=3, d=1, ram={2, INF}, s_inf=1),     # real place disagrees with index
    dict(n=3, d=1, ram=set(), s_inf=2),        # parity of the index
])
def test_invalid_invariant_tuples(kwargs):
    with pytest.raises(ValueError):
        Invariants(kwargs["n"], kwargs["d"], frozenset(kwargs["ram"]), kwargs["s_inf"])
