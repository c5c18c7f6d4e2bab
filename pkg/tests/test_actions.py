"""Derived actions: cycle data, subset lifts, products, wreath elements."""

import itertools
import math
import random

import pytest

from wreathcount import (
    DEFAULT,
    BudgetExceeded,
    Permutation,
    UnknownFamily,
    block_decomposition,
    build_wreath_group,
    cycle_type,
    family,
    fix_subsets_direct,
    fix_subsets_formula,
    gamma,
    parse_group_spec,
    parse_permutation,
    product_action_build,
    sigma,
    sigma_prime,
    subset_rank,
    subset_unrank,
    subsets_action_lift,
)
from wreathcount.actions import cycle_type_class_size


def _all_perms(m):
    for images in itertools.permutations(range(m)):
        yield Permutation(images)


def test_cycle_type_alpha():
    p = parse_permutation("(1 2)(3 4 5)", 6)
    ct = cycle_type(p)
    assert ct.alpha == ((1, 1), (2, 1), (3, 1))
    assert ct.degree == 6
    assert ct.sigma() == 3
    assert ct.fixed() == 1
    assert ct.as_dict() == {1: 1, 2: 1, 3: 1}


def test_sigma_and_gamma_count_cycles():
    p = parse_permutation("(1 2 3)", 4)
    assert sigma(p) == 2
    assert gamma(p) == 2
    ident = Permutation(range(4))
    assert sigma(ident) == 4


def test_class_sizes_sum_to_factorial():
    for m in range(1, 8):
        seen = {}
        for p in _all_perms(m):
            seen[cycle_type(p).alpha] = seen.get(cycle_type(p).alpha, 0) + 1
        total = 0
        for alpha, count in seen.items():
            ct = cycle_type(Permutation(range(m)))
            size = cycle_type_class_size(type(ct)(alpha))
            assert size == count
            total += size
        assert total == math.factorial(m)


def test_class_size_extremes():
    full = cycle_type(parse_permutation("(1 2 3 4 5)"))
    assert cycle_type_class_size(full) == math.factorial(4)
    ident = cycle_type(Permutation(range(5)))
    assert cycle_type_class_size(ident) == 1


def test_subset_rank_unrank_roundtrip():
    for m, ell in [(7, 3), (6, 2), (5, 1), (5, 4)]:
        count = math.comb(m, ell)
        ranks = set()
        for subset in itertools.combinations(range(m), ell):
            r = subset_rank(subset)
            assert 0 <= r < count
            assert subset_unrank(r, ell, m) == subset
            ranks.add(r)
        assert len(ranks) == count
    assert subset_rank((0, 1, 2)) == 0


def test_lift_is_a_homomorphism():
    rng = random.Random(9)
    for _ in range(25):
        a = list(range(6))
        b = list(range(6))
        rng.shuffle(a)
        rng.shuffle(b)
        p, q = Permutation(a), Permutation(b)
        lift = lambda x: subsets_action_lift(x, 2)
        assert lift(p * q) == lift(p) * lift(q)
        assert lift(p.inverse()) == lift(p).inverse()
    assert subsets_action_lift(Permutation(range(6)), 2).is_identity()
    assert subsets_action_lift(Permutation(range(6)), 2).degree == 15


def test_lift_budget_refusal():
    tight = DEFAULT.with_overrides(max_lift_degree=10)
    with pytest.raises(BudgetExceeded):
        subsets_action_lift(Permutation(range(8)), 4, budgets=tight)


def test_sigma_prime_and_fix_match_lift():
    for p in _all_perms(5):
        for ell in range(1, 5):
            lifted = subsets_action_lift(p, ell)
            assert sigma_prime(p, ell) == lifted.cycle_count()
            assert fix_subsets_direct(p, ell) == lifted.fixed_point_count()


def test_fix_formula_matches_direct_exhaustive():
    for m in range(2, 7):
        for p in _all_perms(m):
            ctype = cycle_type(p).as_dict()
            for ell in range(m + 1):
                assert fix_subsets_formula(ctype, ell) == fix_subsets_direct(p, ell)


def test_lifted_cycle_half_bound():
    # 2 * sigma'(pi) - fix'(pi) never exceeds the lifted degree
    for m in range(2, 6):
        for ell in range(1, m):
            dom = math.comb(m, ell)
            for p in _all_perms(m):
                assert 2 * sigma_prime(p, ell) - fix_subsets_direct(p, ell) <= dom


def test_product_action_single_factor_is_lift():
    rng = random.Random(31)
    for _ in range(10):
        a = list(range(5))
        rng.shuffle(a)
        p = subsets_action_lift(Permutation(a), 2)
        built = product_action_build([p], Permutation([0]), 5, 2)
        assert built == p


def test_product_action_group_order():
    from wreathcount import PermGroup

    gens = []
    swap = Permutation([1, 0])
    ident_top = Permutation([0, 1])
    s3_gens = [parse_permutation("(1 2)", 3), parse_permutation("(1 2 3)", 3)]
    ident3 = Permutation(range(3))
    for g in s3_gens:
        gens.append(product_action_build([g, ident3], ident_top, 3, 1))
        gens.append(product_action_build([ident3, g], ident_top, 3, 1))
    gens.append(product_action_build([ident3, ident3], swap, 3, 1))
    grp = PermGroup(gens)
    assert grp.degree == 9
    assert grp.order == 72


def test_wreath_group_multiplication():
    top = parse_group_spec("symmetric:3")
    wr = build_wreath_group(2, top)
    ident = wr.identity
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in wr.generators():
                y = wr.multiply(x, g)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(elements) == 2 ** 3 * 6
    for x in elements:
        assert wr.multiply(x, wr.inverse(x)) == ident
        assert wr.multiply(wr.inverse(x), x) == ident


def test_family_orders_and_degrees():
    cases = [
        ("cyclic:5", 5, 5),
        ("symmetric:4", 4, 24),
        ("alternating:4", 4, 12),
        ("dihedral:5", 5, 10),
        ("wreath-cyclic:3", 6, 24),
        ("quaternion", 8, 8),
        ("subsets:5,2", 10, 120),
        ("subsets-alt:5,2", 10, 60),
        ("product:3,1,2", 9, 72),
    ]
    for spec, degree, order in cases:
        grp = parse_group_spec(spec)
        assert grp.degree == degree, spec
        assert grp.order == order, spec
        assert grp.spec_string() == spec


def test_family_rejects_bad_parameters():
    with pytest.raises(UnknownFamily):
        family("nosuch", ("3",))
    with pytest.raises(UnknownFamily):
        parse_group_spec("subsets:5,0")
    with pytest.raises((UnknownFamily, ValueError)):
        parse_group_spec("cyclic:0")


def test_gens_spec_parses_degree():
    grp = parse_group_spec("gens:4,(1 2)(3 4)")
    assert grp.degree == 4
    assert grp.order == 2


def test_block_decomposition_cyclic4():
    bd = block_decomposition(parse_group_spec("cyclic:4"))
    assert bd.r == 2
    assert bd.blocks == ((0, 2), (1, 3))
    assert bd.kernel.order == 2
    assert bd.quotient.order == 2


def test_block_decomposition_edge_cases():
    assert block_decomposition(parse_group_spec("symmetric:3")) is None
    with pytest.raises(ValueError):
        block_decomposition(parse_group_spec("gens:3,(1 2)"))
