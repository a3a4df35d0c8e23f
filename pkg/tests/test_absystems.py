from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from quadcover.absystems.bounds import exact_f, lower_bound_f, lower_bounds, theorem_value
from quadcover.absystems.constructions import (construct_0_4_mod12, construct_2_4_mod6, construct_6t,
                                               construct_cyclic, construct_doubling, construct_lambda,
                                               construct_large_b, construct_mu,
                                               construct_partial_2_4_mod6, extend_b_plus_1,
                                               extend_b_plus_2, pair_completion, pair_completion_count)
from quadcover.absystems.instance import ABInstance, qualifying_triples, verify_ab
from quadcover.absystems.recipes import BASE_RECIPES, best_plan
from quadcover.designs.numbers import c_star, covering_number, two_c_star
from quadcover.designs.system import BlockSystem
from quadcover.errors import (DomainError, MissingIngredient, PreconditionFailed, QuadcoverError,
                              UnsupportedParameters)


@pytest.mark.parametrize("a,b,blocks,witness", [
    (3, 1, [(0, 1, 2, 3)], None),
    (3, 2, [(0, 1, 2, 3), (0, 1, 2, 4)], None),
    (3, 2, [(0, 1, 2, 3)], (0, 1, 4)),
])
def test_verify_ab_examples(a, b, blocks, witness):
    v = verify_ab(ABInstance.build(a, b, blocks))
    assert bool(v) == (witness is None)
    assert v.witness == witness


@given(st.integers(2, 8), st.integers(0, 6))
def test_qualifying_triples_count(a, b):
    n = a + b
    assert len(list(qualifying_triples(a, n))) == comb(n, 3) - comb(b, 3) - comb(b, 2) * a


@pytest.mark.parametrize("a,b,expected", [(6, 7, 39), (5, 3, 12), (3, 1, 1)])
def test_lower_bound_examples(a, b, expected):
    assert lower_bound_f(a, b)[0] == expected


def test_lower_bound_names():
    assert set(lower_bounds(6, 7)) >= {"weight", "weight+covering", "counting"}
    assert "weight+covering" not in lower_bounds(4, 7)


@pytest.mark.parametrize("a,b,value", [(7, 6, 42), (6, 8, 44), (4, 7, 18), (5, 5, 20), (3, 3, 3),
                                       (6, 7, 39), (4, 6, 15)])
def test_exact_f_examples(a, b, value):
    rep = exact_f(a, b)
    assert rep.exact and rep.value == value
    assert exact_f(a, b, "constructive").value == value


def test_exact_f_not_exact_at_7_5():
    rep = exact_f(7, 5)
    assert not rep.exact
    assert theorem_value(7, 5) is None


def test_exact_f_4_mod_6_odd_b_is_an_upper_bound_only():
    rep = exact_f(10, 19)
    assert rep.upper == theorem_value(10, 19)[0]
    assert rep.lower < rep.upper and not rep.exact


def test_exact_f_line():
    line = exact_f(6, 7).line()
    assert line.startswith("f(6,7): lower=39 upper=39 exact=yes (")


def test_exact_f_mode_checked():
    with pytest.raises(DomainError):
        exact_f(6, 7, "guess")


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 14), st.integers(0, 30))
def test_bounds_are_ordered(a, b):
    rep = exact_f(a, b)
    if rep.upper is not None:
        assert rep.lower <= rep.upper
    assert rep.exact == (rep.upper == rep.lower)


@pytest.mark.parametrize("a,b", [(3, 1), (9, 7), (6, 5), (7, 6), (10, 8)])
def test_construct_mu(a, b):
    inst = construct_mu(a, b)
    assert len(inst) == b * covering_number(a) and verify_ab(inst)


def test_construct_mu_too_few():
    with pytest.raises(QuadcoverError):
        construct_mu(5, 2)


def test_construct_lambda():
    inst = construct_lambda(12, 9)
    assert len(inst) <= 220 and verify_ab(inst)
    assert len(construct_lambda(6, 1)) <= 20
    with pytest.raises(PreconditionFailed):
        construct_lambda(12, 10)


def test_extensions():
    base = construct_doubling(6)
    assert len(base) == 33
    plus1 = extend_b_plus_1(base)
    plus2 = extend_b_plus_2(base)
    assert (len(plus1), len(plus2)) == (39, 44)
    assert verify_ab(plus1) and verify_ab(plus2)
    small = ABInstance.build(3, 1, [(0, 1, 2, 3)])
    assert len(extend_b_plus_2(small)) == 3


@pytest.mark.parametrize("a", [6, 14, 18])
def test_doubling(a):
    inst = construct_doubling(a)
    assert len(inst) == (2 * a ** 3 - a ** 2) // 12 and verify_ab(inst)


def test_pair_completion_counts():
    partial = BlockSystem.from_blocks(6, 4, [(0, 1, 2, 3)])
    assert pair_completion_count(partial, 3) == 3 * 1 + 0
    done = pair_completion(partial, 3, 3)
    assert verify_ab(done)
    full = BlockSystem.from_blocks(4, 4, [(0, 1, 2, 3)])
    assert pair_completion_count(full, 3) == 0


def test_pair_completion_odd_gap():
    # pair {0,1} misses three B elements: two blocks close it
    blocks = [(0, 1, 2, 3), (0, 2, 4, 5), (1, 2, 4, 5), (0, 2, 3, 6), (1, 2, 3, 6)]
    partial = BlockSystem.from_blocks(7, 4, blocks)
    gaps = pair_completion_count(partial, 3)
    assert verify_ab(pair_completion(partial, 3, 4))
    assert gaps >= 2


@pytest.mark.parametrize("a,size", [(16, 630), (24, 2184)])
def test_0_4_mod12(a, size):
    inst = construct_0_4_mod12(a)
    assert len(inst) == size and inst.b == a - 1 and verify_ab(inst)


def test_0_4_mod12_excludes_12():
    with pytest.raises(UnsupportedParameters):
        construct_0_4_mod12(12)


@pytest.mark.parametrize("a,size", [(4, 3), (10, 119)])
def test_partial_2_4_mod6(a, size):
    inst, missing = construct_partial_2_4_mod6(a)
    assert len(inst) == size
    assert missing == (a - 3, a - 2, a - 1)
    assert verify_ab(inst).witness == missing


def test_partial_2_4_mod6_excludes_8():
    with pytest.raises(UnsupportedParameters):
        construct_partial_2_4_mod6(8)


@pytest.mark.parametrize("a,j,size", [(4, 1, 8), (10, 1, 151), (4, 2, 13)])
def test_2_4_mod6(a, j, size):
    inst = construct_2_4_mod6(a, j)
    assert len(inst) == size and inst.b == a - 3 + 2 * j and verify_ab(inst)


@pytest.mark.parametrize("a", range(3, 11))
def test_cyclic(a):
    inst = construct_cyclic(a)
    assert len(inst) == comb(a + 1, 3) and verify_ab(inst)


@pytest.mark.parametrize("j", [1, 2])
def test_6t(j):
    inst = construct_6t(12, j)
    assert len(inst) == 216 + 46 * j and verify_ab(inst)


def test_6t_rejects_10():
    with pytest.raises(UnsupportedParameters):
        construct_6t(10, 1)


@pytest.mark.parametrize("a", [4, 8, 12])
def test_large_b(a):
    inst = construct_large_b(a)
    assert inst.b == 2 * a - 2
    assert len(inst) == (2 * a - 2) * c_star(a) and verify_ab(inst)


def test_large_b_missing_family():
    with pytest.raises(MissingIngredient):
        construct_large_b(10)


def test_best_plan_restricted():
    plan = best_plan(6, 7, "constructive", "doubling")
    assert plan.describe().startswith("doubling(6,6)") and plan.size == 39
    assert best_plan(8, 3, "constructive", "mod12") is None
    with pytest.raises(DomainError):
        best_plan(6, 7, "constructive", "nope")
    assert "large-b" in BASE_RECIPES


def test_best_plan_none_for_impossible():
    assert best_plan(2, 1) is None


GRID = [(a, b) for a in range(3, 19) for b in range(0, 2 * a + 1) if a + b <= 30]


@pytest.mark.parametrize("a,b", GRID)
def test_every_constructive_plan_verifies(a, b):
    plan = best_plan(a, b, "constructive")
    if plan is None:
        return
    inst = plan.build()
    assert (inst.a, inst.b) == (a, b)
    assert len(inst) == plan.size
    assert verify_ab(inst)
    assert len(inst) >= lower_bound_f(a, b)[0]


@pytest.mark.parametrize("a,b", [(a, b) for a in range(3, 30) for b in (a - 2, a, a + 3, 2 * a) if b >= 1])
def test_theorem_values_not_below_lower_bound(a, b):
    thm = theorem_value(a, b)
    if thm is not None:
        assert thm[0] >= lower_bound_f(a, b)[0]


def test_two_c_star_extension_step():
    for a in range(3, 20):
        assert two_c_star(a) == int(2 * c_star(a))
