"""Contract examples and oracle sweeps for the group arithmetic layer."""

import random

import pytest

import oracles
from neutralrep.abelian import (
    FiniteAbelianGroup,
    generates,
    is_prime,
    mod_p_image,
    prime_factorization,
    primary_projection,
    rank_mod_p,
    restriction_faithful_on_primary,
    smith_normal_form,
    subgroup_membership,
)
from neutralrep.errors import (
    BadCoordinateLengthError,
    CapExceededError,
    InfiniteGroupError,
    InvalidInvariantFactorsError,
    NonCyclicPrimaryPartError,
)


def snf_is_valid(M):
    U, D, W = smith_normal_form(M)
    m, n = len(M), len(M[0]) if M else 0
    prod = oracles.matmul(oracles.matmul(U, [list(r) for r in M]), W)
    assert prod == D
    assert abs(oracles.det(U)) == 1
    assert abs(oracles.det(W)) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    return diag


def test_snf_identity():
    diag = snf_is_valid([[1, 0], [0, 1]])
    assert diag == [1, 1]


def test_snf_diag_2_3():
    # oracle: the cokernel of the column span of diag(2, 3) in Z^2 is the
    # 6-element group of pairs mod (2, 3); the coset (1, 1) has order 6, so
    # the cokernel is cyclic of order 6 and the invariant factors are 1, 6
    cur, order = (0, 0), 0
    while True:
        cur = ((cur[0] + 1) % 2, (cur[1] + 1) % 3)
        order += 1
        if cur == (0, 0):
            break
    assert order == 6
    assert snf_is_valid([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero_row():
    assert snf_is_valid([[2, 0], [0, 0]]) == [2, 0]


def test_snf_rectangular_and_empty():
    assert snf_is_valid([[6, 10, 15]]) == [1]
    assert snf_is_valid([[4], [6]]) == [2]
    U, D, W = smith_normal_form([])
    assert (U, D, W) == ([], [], [])
    diag = snf_is_valid([[0, 0], [0, 0]])
    assert diag == [0, 0]


def test_snf_seeded_random_matrices():
    rng = random.Random(991)
    for _ in range(60):
        M = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        snf_is_valid(M)


def test_snf_rejects_ragged_rows():
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


def test_from_relations_examples():
    assert FiniteAbelianGroup.from_relations([[4]]).invariant_factors == (4,)
    assert FiniteAbelianGroup.from_relations([[2, 0], [0, 3]]).invariant_factors == (6,)
    with pytest.raises(InfiniteGroupError):
        FiniteAbelianGroup.from_relations([[2, 0]])
    with pytest.raises(InfiniteGroupError):
        FiniteAbelianGroup.from_relations([[0, 0], [0, 0]])
    assert FiniteAbelianGroup.from_relations([]).is_trivial
    assert FiniteAbelianGroup.from_relations([[1, 0], [0, 1]]).is_trivial
    # redundant relations are harmless
    assert FiniteAbelianGroup.from_relations([[4], [8]]).invariant_factors == (4,)


def test_invariant_factor_validation():
    with pytest.raises(InvalidInvariantFactorsError):
        FiniteAbelianGroup((12, 2))  # violates the divisibility ordering
    with pytest.raises(InvalidInvariantFactorsError):
        FiniteAbelianGroup((1,))
    with pytest.raises(InvalidInvariantFactorsError):
        FiniteAbelianGroup((0,))
    g = FiniteAbelianGroup((2, 12))
    assert g.order == 24 and g.exponent == 12 and g.rank == 2
    trivial = FiniteAbelianGroup()
    assert trivial.order == 1 and trivial.exponent == 1 and trivial.is_cyclic


def test_character_reduction_and_arithmetic():
    g = FiniteAbelianGroup((4,))
    assert g.character((5,)).coords == (1,)
    chi = g.character((3,))
    assert (chi + chi).coords == (2,)
    assert (-chi).coords == (1,)
    assert (3 * chi).coords == (1,)
    assert chi.order == 4 and g.character((2,)).order == 2
    assert g.zero().is_zero
    with pytest.raises(BadCoordinateLengthError):
        g.character((1, 2))


def test_cyclic_factor_presentation():
    pres = FiniteAbelianGroup.from_cyclic_factors([4, 3])
    assert pres.group.invariant_factors == (12,)
    chi = pres.character((1, 2))
    assert primary_projection(chi, 3).coords == (2,)  # coordinate split
    assert primary_projection(chi, 2).coords == (1,)
    assert FiniteAbelianGroup.from_cyclic_factors([12, 2]).group.invariant_factors == (2, 12)
    assert FiniteAbelianGroup.from_cyclic_factors([1, 1]).group.is_trivial
    assert FiniteAbelianGroup.from_cyclic_factors([6]).group.invariant_factors == (6,)
    # the conversion is an isomorphism: orders match elementwise
    pres = FiniteAbelianGroup.from_cyclic_factors([2, 6])
    import itertools
    images = set()
    for a in range(2):
        for b in range(6):
            chi = pres.character((a, b))
            images.add(chi.coords)
    assert len(images) == 12


def test_primary_projection_examples():
    g6 = FiniteAbelianGroup((6,))
    eps, pe = oracles.crt_idempotent(6, 2)
    assert (eps, pe) == (3, 2)
    chi = g6.character((1,))
    assert primary_projection(chi, 2).coords == ((eps * 1) % pe,) == (1,)
    assert primary_projection(g6.character((2,)), 2).coords == (0,)
    # prime not dividing the order: trivial image
    assert primary_projection(g6.character((1,)), 5).coords == ()


def test_primary_projection_is_homomorphism():
    for factors in oracles.all_groups(36):
        group = FiniteAbelianGroup(factors)
        chars = [group.character(c) for c in oracles.all_coord_tuples(factors)]
        for p in group.prime_divisors():
            for a in chars:
                for b in chars:
                    lhs = primary_projection(a + b, p)
                    rhs = primary_projection(a, p) + primary_projection(b, p)
                    assert lhs == rhs


def test_mod_p_image_examples():
    g33 = FiniteAbelianGroup((3, 3))
    assert mod_p_image(g33.character((1, 2)), 3) == (1, 2)
    g4 = FiniteAbelianGroup((4,))
    assert mod_p_image(g4.character((2,)), 2) == (0,)
    g = FiniteAbelianGroup((2, 12))
    assert mod_p_image(g.character((1, 3)), 2) == (1, 1)


def test_mod_p_image_vanishes_iff_projection_in_p_torsion():
    for factors in oracles.all_groups(36):
        group = FiniteAbelianGroup(factors)
        for p in group.prime_divisors():
            pp = group.primary_part(p)
            p_multiples = pp.group.subgroup(
                [p * pp.group.character(c) for c in _standard_basis(pp.group)]
            )
            for coords in oracles.all_coord_tuples(factors):
                chi = group.character(coords)
                image_zero = not any(mod_p_image(chi, p))
                in_p_part = p_multiples.contains(primary_projection(chi, p))
                assert image_zero == in_p_part


def _standard_basis(group):
    k = group.rank
    return [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]


def test_generates_examples():
    g4 = FiniteAbelianGroup((4,))
    assert not generates([g4.character((2,))], g4)
    assert generates([g4.character((1,))], g4)
    g22 = FiniteAbelianGroup((2, 2))
    assert generates([g22.character((1, 0)), g22.character((1, 1))], g22)
    assert generates([], FiniteAbelianGroup())
    assert not generates([], g4)


def test_generates_agrees_with_closure_enumeration():
    # small sweep here; the acceptance suite runs the full order <= 64 version
    for factors in oracles.all_groups(20, max_rank=2):
        group = FiniteAbelianGroup(factors)
        tuples = oracles.all_coord_tuples(factors)
        chars = [group.character(c) for c in tuples]
        import itertools
        for size in range(min(2, len(tuples)) + 1):
            for subset in itertools.combinations(range(len(tuples)), size):
                expected = len(
                    oracles.closure_bruteforce(factors, [tuples[i] for i in subset])
                ) == group.order
                assert generates([chars[i] for i in subset], group) == expected


def test_generates_cap():
    g6 = FiniteAbelianGroup((6,))
    with pytest.raises(CapExceededError):
        generates([g6.character((1,))], g6, cap=2)


def test_subgroup_membership_examples():
    g4 = FiniteAbelianGroup((4,))
    H = g4.subgroup([g4.character((2,))])
    assert subgroup_membership(g4.character((2,)), H)
    assert not subgroup_membership(g4.character((1,)), H)
    g22 = FiniteAbelianGroup((2, 2))
    H2 = g22.subgroup([g22.character((1, 0))])
    assert not subgroup_membership(g22.character((1, 1)), H2)
    assert subgroup_membership(g22.zero(), H2)


def test_subgroup_membership_matches_closure():
    rng = random.Random(7)
    for factors in [(4,), (6,), (12,), (2, 4), (2, 6), (3, 9), (2, 2)]:
        group = FiniteAbelianGroup(factors)
        tuples = oracles.all_coord_tuples(factors)
        for _ in range(10):
            gens = [group.character(rng.choice(tuples)) for _ in range(rng.randint(0, 3))]
            H = group.subgroup(gens)
            closure = oracles.closure_bruteforce(factors, [g.coords for g in gens])
            assert H.order == len(closure)
            assert [c.coords for c in H.elements()] == sorted(closure)
            for coords in tuples:
                assert H.contains(group.character(coords)) == (coords in closure)


def test_restriction_faithful_on_primary():
    g4 = FiniteAbelianGroup((4,))
    assert restriction_faithful_on_primary(g4.character((1,)), 2)
    assert not restriction_faithful_on_primary(g4.character((2,)), 2)
    g6 = FiniteAbelianGroup((6,))
    assert not restriction_faithful_on_primary(g6.character((3,)), 3)
    with pytest.raises(NonCyclicPrimaryPartError):
        restriction_faithful_on_primary(FiniteAbelianGroup((3, 3)).character((1, 1)), 3)
    # trivial primary part: vacuously faithful
    assert restriction_faithful_on_primary(g6.character((1,)), 5)


def test_primary_part_structure():
    group = FiniteAbelianGroup((2, 12))
    pp = group.primary_part(2)
    assert pp.group.invariant_factors == (2, 4)
    assert pp.indices == (0, 1)
    assert pp.p_rank == 2
    assert pp.group.order == 8  # largest power of 2 dividing 24
    pp3 = group.primary_part(3)
    assert pp3.group.invariant_factors == (3,) and pp3.indices == (1,)


def test_rank_mod_p():
    assert rank_mod_p([(1, 0), (0, 1)], 2) == 2
    assert rank_mod_p([(1, 1), (2, 2)], 3) == 1
    assert rank_mod_p([], 5) == 0
    assert rank_mod_p([(0, 0)], 5) == 0


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factorization(360) == {2: 3, 3: 2, 5: 1}
    assert FiniteAbelianGroup((2, 12)).prime_divisors() == (2, 3)
    assert FiniteAbelianGroup().prime_divisors() == ()
