from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from quadcover.absystems.bounds import exact_f
from quadcover.absystems.instance import ABInstance, verify_ab
from quadcover.designs.numbers import covering_number, packing_number, two_c_star
from quadcover.lottery.assembly import assemble
from quadcover.lottery.residues import bound_L
from quadcover.oracle.problems import (exact_covering, exact_f_oracle, exact_L, exact_min_weight,
                                       exact_packing, f_instance, witness_instance)
from quadcover.oracle.search import Budget, CoverInstance, exact_min_cover


@pytest.mark.parametrize("a,b,value", [(3, 1, 1), (3, 2, 2), (4, 3, 8), (2, 3, 2), (4, 1, 4), (6, 2, 14)])
def test_exact_f_oracle(a, b, value):
    res = exact_f_oracle(a, b)
    assert res.optimal and res.optimum == value
    assert verify_ab(witness_instance(a, b, res))


@pytest.mark.parametrize("a,b", [(2, 1), (3, 0)])
def test_infeasible(a, b):
    assert exact_f_oracle(a, b).status == "infeasible"


@pytest.mark.parametrize("n,value", [(4, 1), (5, 1), (6, 3), (7, 4), (8, 6)])
def test_exact_L(n, value):
    res = exact_L(n)
    assert res.optimum == value <= bound_L(n).value


def test_exact_L_9_within_assembled_bound():
    upper = len(assemble(3, 3, 3))
    res = exact_L(9, Budget(seconds=5), upper=upper)
    assert res.status in ("optimal", "timeout_with_bounds")
    if res.optimal:
        assert res.optimum <= 9
    else:
        assert res.upper <= 9 and res.lower <= res.upper


def test_budget_exhaustion_reports_bounds():
    res = exact_L(9, Budget(nodes=200))
    assert res.status == "timeout_with_bounds"
    assert res.summary().startswith("bounds ")


@pytest.mark.parametrize("a", range(3, 9))
def test_covering_packing_weight(a):
    assert exact_covering(a).optimum == covering_number(a)
    assert exact_packing(a)[0] == packing_number(a)
    assert exact_min_weight(a).optimum == two_c_star(a)


def test_weighted_cover_small():
    inst = CoverInstance(("x", "y", "z"), ("big", "a", "b", "c"), ((0, 1, 2), (0,), (1,), (2,)), (5, 1, 1, 1))
    res = exact_min_cover(inst)
    assert res.optimum == 3 and res.witness == ("a", "b", "c")


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(3, 2), (4, 2), (3, 3), (5, 1), (4, 3)]), st.randoms(use_true_random=False))
def test_relabelling_invariance(ab, rnd):
    a, b = ab
    base = exact_f_oracle(a, b)
    pa = rnd.sample(range(a), a)
    pb = [a + i for i in rnd.sample(range(b), b)]
    perm = pa + pb
    inst = f_instance(a, b)

    def image(block):
        return tuple(sorted(perm[x] for x in block))

    # relabelled instance, listed in its own lexicographic order
    targets = sorted(image(t) for t in inst.targets)
    cands = sorted(image(c) for c in inst.candidates)
    relabelled = CoverInstance.from_relation(targets, cands, lambda c: combinations(c, 3))
    res = exact_min_cover(relabelled)
    assert res.optimum == base.optimum
    inverse = {v: i for i, v in enumerate(perm)}
    back = [tuple(sorted(inverse[x] for x in blk)) for blk in res.witness]
    assert verify_ab(ABInstance.build(a, b, back))


@pytest.mark.parametrize("a,b", [(3, 3), (4, 3), (5, 2), (6, 2)])
def test_determinism_across_workers(a, b):
    results = {w: exact_f_oracle(a, b, workers=w) for w in (1, 2, 8)}
    first = results[1]
    for r in results.values():
        assert (r.optimum, r.witness) == (first.optimum, first.witness)


@pytest.mark.parametrize("a,b", [(a, n - a) for n in range(4, 9) for a in range(3, n + 1)])
def test_oracle_within_bounds(a, b):
    res = exact_f_oracle(a, b)
    if not res.optimal:
        return
    rep = exact_f(a, b)
    assert rep.lower <= res.optimum
    if rep.upper is not None:
        assert res.optimum <= rep.upper
