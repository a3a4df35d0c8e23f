from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from quadcover.designs.system import BlockSystem
from quadcover.errors import DomainError
from quadcover.lottery.assembly import assemble, ordered_partitions, partition_search
from quadcover.lottery.residues import RESIDUES, TABLE, bound_L, polynomial_table, residue_for
from quadcover.lottery.system import LotterySystem, first_failing_quadruple, verify_lottery


def brute_force_valid(system: BlockSystem) -> bool:
    blocks = [set(b) for b in system.blocks]
    return all(any(len(set(k) & b) >= 3 for b in blocks) for k in combinations(range(system.n), 4))


def test_verify_lottery_examples():
    assert verify_lottery(LotterySystem(4, BlockSystem.from_blocks(4, 4, [(0, 1, 2, 3)])))
    v = verify_lottery(LotterySystem(6, BlockSystem.from_blocks(6, 4, [(0, 1, 2, 3)])))
    assert not v and v.witness == (0, 1, 4, 5)


@pytest.mark.parametrize("parts,size", [((3, 3, 3), 9), ((3, 3, 4), 15), ((3, 5, 5), 37)])
def test_assemble(parts, size):
    lot = assemble(*parts)
    assert len(lot) == size
    assert brute_force_valid(lot.system)


def test_assemble_7_5_3_is_not_54():
    # f(7,5) >= 36, so this partition cannot give 54
    lot = assemble(7, 5, 3)
    assert len(lot) > 54 and verify_lottery(lot)


@pytest.mark.parametrize("n,value", [(21, 147), (9, 9), (10, 15), (13, 37), (11, 20), (12, 29)])
def test_bound_L_examples(n, value):
    assert bound_L(n).value == value


def test_bound_L_fallbacks():
    for n in (15, 16, 18, 24):
        assert bound_L(n).fallback
    assert bound_L(15).value == 59
    assert not bound_L(33).fallback
    with pytest.raises(DomainError):
        bound_L(3)


@given(st.integers(4, 3000))
def test_residue_formula_integral(n):
    res = residue_for(n)
    if res.admissible(n):
        assert res.numerator(n) % 216 == 0
        assert sum(res.parts(n)) == n


def test_residue_classes_cover_everything():
    # odd n by n mod 18, even n by n mod 36
    classes = {(r.modulus, r.residue) for r in RESIDUES}
    assert len(classes) == len(RESIDUES) == 27
    assert classes == {(18, k) for k in range(1, 18, 2)} | {(36, k) for k in range(0, 36, 2)}


def test_partition_counts():
    assert len(list(ordered_partitions(9))) == 1
    assert len(list(ordered_partitions(9, 1))) == 28


@pytest.mark.parametrize("n", range(9, 41))
def test_partition_search_not_above_bound(n):
    plan = partition_search(n, "theory")
    assert plan.predicted <= bound_L(n).value


@pytest.mark.parametrize("n,parts,value", [(14, (3, 6, 5), 48), (32, (9, 12, 11), 577)])
def test_partition_search_improvements(n, parts, value):
    plan = partition_search(n)
    assert (plan.parts, plan.predicted) == (parts, value)
    assert bound_L(n).value > value


@pytest.mark.parametrize("n", [9, 10, 11, 12, 13, 14, 15])
def test_assembled_search_results_verify(n):
    plan = partition_search(n)
    lot = assemble(*plan.parts, recipes=plan.plans)
    assert len(lot) == plan.predicted
    assert verify_lottery(lot)


def test_assembled_32():
    plan = partition_search(32)
    lot = assemble(*plan.parts, recipes=plan.plans)
    assert len(lot) == 577 and verify_lottery(lot, workers=4)


@pytest.mark.parametrize("family,k,value", [("f(6t+3,6t+2)", 1, 96), ("f(6t+1,6t)", 1, 42),
                                            ("f(12s+2,12s+3)", 0, 2)])
def test_polynomial_table(family, k, value):
    assert polynomial_table(family, k) == value


def test_polynomial_table_domain():
    with pytest.raises(DomainError):
        polynomial_table("f(6t+7,6t+5)", 0)
    with pytest.raises(DomainError):
        polynomial_table("f(6t+9,6t)", 0)


def test_table_rows_named_consistently():
    for name, row in TABLE.items():
        assert row.name == name


@given(st.integers(5, 11), st.randoms(use_true_random=False))
def test_first_failure_is_lexicographic_and_worker_independent(n, rnd):
    blocks = {tuple(sorted(rnd.sample(range(n), 4))) for _ in range(rnd.randint(0, 12))}
    system = BlockSystem.from_blocks(n, 4, blocks)
    hit = first_failing_quadruple(system)
    assert first_failing_quadruple(system, workers=3) == hit
    bs = [set(b) for b in blocks]
    failing = [k for k in combinations(range(n), 4) if all(len(set(k) & b) < 3 for b in bs)]
    assert hit == (failing[0] if failing else None)
