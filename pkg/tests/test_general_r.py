import pytest
from hypothesis import given, settings, strategies as st

from quadcover.absystems.instance import ABInstance, verify_ab
from quadcover.designs.system import BlockSystem
from quadcover.errors import MissingIngredient, PreconditionFailed
from quadcover.general_r.systems import (RSystemInstance, bound_L_r, construct_f5, construct_f6,
                                         lower_bound_fr, t_opt, verify_r)


@pytest.mark.parametrize("r,t", [(4, 3), (5, 3), (6, 4), (7, 5), (9, 6)])
def test_t_opt(r, t):
    assert t_opt(r) == t


@pytest.mark.parametrize("a,b,r,value", [(4, 4, 5, 4), (4, 4, 6, 2), (2, 1, 4, 1), (16, 14, 6, 140)])
def test_lower_bound_fr(a, b, r, value):
    assert lower_bound_fr(a, b, r) == value


def test_f5():
    inst = construct_f5(a=4)
    assert len(inst) == 4 and inst.r == 5 and verify_r(inst)
    with pytest.raises(MissingIngredient):
        construct_f5(a=16)


def test_f6():
    inst = construct_f6(b=14, a=16)
    assert len(inst) == 140 and verify_r(inst)
    with pytest.raises(PreconditionFailed):
        construct_f6(b=13, a=16)


def test_bound_L_r_examples():
    res = bound_L_r(4, 4, 4, 5)
    assert res.value == 12 and res.verified
    big = bound_L_r(16, 16, 16, 6, assemble=False)
    assert big.value == 480
    with pytest.raises(MissingIngredient):
        bound_L_r(6, 6, 6, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(0, 3), st.randoms(use_true_random=False))
def test_verify_r_matches_verify_ab(a, b, rnd):
    n = a + b
    if n < 4:
        return
    blocks = {tuple(sorted(rnd.sample(range(n), 4))) for _ in range(rnd.randint(0, 10))}
    inst = ABInstance.build(a, b, blocks)
    assert verify_r(RSystemInstance.from_ab(inst)) == verify_ab(inst)


def test_verify_r_reports_witness():
    inst = RSystemInstance(3, 2, BlockSystem.from_blocks(5, 5, []))
    assert verify_r(inst).witness == (0, 1, 2)
