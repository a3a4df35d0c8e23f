"""Explicit (A,B)-system constructions.

Conventions: A = {0..a-1}, B = {a..a+b-1}. Every public constructor checks
its output with :func:`verify_ab` and compares the block count against the
closed form it promises before returning.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Sequence

from quadcover.absystems.instance import ABInstance, uncovered_b_sets, verify_ab
from quadcover.designs.ingredients import (IngredientRecord, covering_family, disjoint_covering_family,
                                           large_set, lookup, min_weight_family)
from quadcover.designs.numbers import c_star, covering_number, mu_value, two_c_star
from quadcover.designs.steiner import construct_sqs, sqs_supported
from quadcover.designs.system import BlockSystem, uncovered_pairs, weight_of
from quadcover.designs.triples import (construct_optimal_covering, construct_packing_with_leave,
                                       maximum_packing)
from quadcover.errors import DomainError, PreconditionFailed, UnsupportedParameters

Quad = tuple[int, int, int, int]


def _lift(triples: Iterable[Sequence[int]], *extra: int) -> list[tuple[int, ...]]:
    return [tuple(t) + extra for t in triples]


def _finish(a: int, b: int, blocks, expected: int | None = None, check: bool = True) -> ABInstance:
    inst = ABInstance.build(a, b, blocks)
    if expected is not None and len(inst) != expected:
        raise AssertionError(f"({a},{b}) construction has {len(inst)} blocks, expected {expected}")
    if check:
        verdict = verify_ab(inst)
        if not verdict:
            raise AssertionError(f"({a},{b}) construction is invalid: {verdict.describe()}")
    return inst


def _require_valid(inst: ABInstance) -> None:
    verdict = verify_ab(inst)
    if not verdict:
        raise PreconditionFailed(f"input is not a valid (A,B)-system: {verdict.describe()}")


def _greedy_quadruples(triples: Iterable[tuple[int, int, int]], a: int) -> list[Quad]:
    """Quadruples inside A covering the given triples, at most one per triple.

    Each still-uncovered triple (in lex order) gets the fourth element that
    covers the most other outstanding triples; ties go to the smallest element.
    """
    left = set(triples)
    out = []
    while left:
        t = min(left)
        best, best_gain = None, -1
        for z in range(a):
            if z in t:
                continue
            q = tuple(sorted(t + (z,)))
            gain = sum(1 for s in combinations(q, 3) if s in left)
            if gain > best_gain:
                best, best_gain = q, gain
        if best is None:
            raise UnsupportedParameters(f"cannot extend a triple to a quadruple inside {a} points")
        out.append(best)
        left.difference_update(combinations(best, 3))
    return out


# -- pair completion ------------------------------------------------------------

def pair_completion(partial: BlockSystem, a: int, b: int) -> ABInstance:
    """Close the gaps {x', x'', y} of a system that already covers every triple of A.

    For each pair of A, the uncovered B elements are paired up in increasing
    order; an odd one out gets the smallest element not already in its block.
    """
    if partial.n != a + b or partial.r != 4:
        raise PreconditionFailed(f"partial system must have n={a + b} and r=4")
    covered = partial.covered_subsets(3)
    for t in combinations(range(a), 3):
        if t not in covered:
            raise PreconditionFailed(f"triple {t} inside A is not covered")
    extra = []
    for (x1, x2), u in uncovered_b_sets(partial, a).items():
        for i in range(0, len(u) - 1, 2):
            extra.append((x1, x2, u[i], u[i + 1]))
        if len(u) % 2:
            y = u[-1]
            z = next((v for v in range(a + b) if v not in (x1, x2, y)), None)
            if z is None:
                raise UnsupportedParameters(f"no filler element on {a + b} points")
            extra.append((x1, x2, y, z))
    return _finish(a, b, list(partial.blocks) + extra)


def pair_completion_count(partial: BlockSystem, a: int) -> int:
    return sum((len(u) + 1) // 2 for u in uncovered_b_sets(partial, a).values())


def construct_small(a: int, b: int) -> ABInstance:
    """a <= 2: nothing to cover for a < 2, and ceil(b/2) blocks for a = 2."""
    if a > 2 or a < 0 or b < 0:
        raise DomainError(f"construct_small handles a <= 2, got a={a}")
    return pair_completion(BlockSystem(a + b, 4, ()), a, b)


# -- base recipes ---------------------------------------------------------------

def construct_mu(a: int, b: int) -> ABInstance:
    """b optimal coverings of A, each lifted by its own element of B."""
    if a < 3:
        raise DomainError(f"construct_mu needs a >= 3, got {a}")
    if b < mu_value(a):
        raise PreconditionFailed(f"b={b} is below mu({a},3)={mu_value(a)}")
    fam = covering_family(a)
    blocks = [q for i in range(b) for q in _lift(fam[i % len(fam)].blocks, a + i)]
    return _finish(a, b, blocks, b * covering_number(a))


def construct_partial_mu(a: int, b: int) -> ABInstance:
    """Like :func:`construct_mu` for b below mu: leftover triples of A get greedy quadruples."""
    if a < 4:
        raise DomainError(f"construct_partial_mu needs a >= 4, got {a}")
    if not 1 <= b:
        raise PreconditionFailed("b must be positive")
    fam = covering_family(a)[:b]
    if len(fam) < b:
        raise PreconditionFailed(f"b={b} exceeds the covering family size {len(fam)}")
    blocks = [q for i, s in enumerate(fam) for q in _lift(s.blocks, a + i)]
    used = {t for s in fam for t in s.blocks}
    blocks += _greedy_quadruples((t for t in combinations(range(a), 3) if t not in used), a)
    return _finish(a, b, blocks)


def construct_lambda(a: int, b: int) -> ABInstance:
    """b disjoint optimal coverings lifted; the remaining triples of A by quadruples inside A."""
    if a % 6 or a < 6:
        raise UnsupportedParameters(f"construct_lambda needs a = 0 mod 6, got {a}")
    if not 1 <= b <= a - 3:
        raise PreconditionFailed(f"b={b} must lie in 1..{a - 3}")
    fam = disjoint_covering_family(a)[:b]
    if len(fam) < b:
        raise PreconditionFailed(f"only {len(fam)} disjoint coverings available for a={a}")
    blocks = [q for i, s in enumerate(fam) for q in _lift(s.blocks, a + i)]
    used = {t for s in fam for t in s.blocks}
    blocks += _greedy_quadruples((t for t in combinations(range(a), 3) if t not in used), a)
    inst = _finish(a, b, blocks)
    if len(inst) > comb(a, 3):
        raise AssertionError(f"lambda construction exceeds C({a},3)")
    return inst


def extend_b_plus_1(inst: ABInstance, check: bool = True) -> ABInstance:
    """Add one element to B, lifting an optimal pair covering of A."""
    if check:
        _require_valid(inst)
    a, b = inst.a, inst.b
    y = a + b
    if a >= 3:
        extra = _lift(construct_optimal_covering(a).blocks, y)
    elif a == 2:
        z = next((v for v in range(2, a + b + 1) if v != y), None)
        if z is None:
            raise UnsupportedParameters("(2,1) has no room for a quadruple")
        extra = [(0, 1, y, z)]
    else:
        extra = []
    added = covering_number(a) if a >= 2 else 0
    return _finish(a, b + 1, list(inst.system.blocks) + extra, len(inst) + added, check)


def min_weight_system(a: int) -> BlockSystem:
    """A triple system on a points of weight c_star(a)."""
    if a < 3:
        return BlockSystem(a, 3, ())
    s = maximum_packing(a)
    if weight_of(s).weight != c_star(a):
        raise AssertionError(f"maximum packing on {a} points is not of minimum weight")
    return s


def extend_b_plus_2(inst: ABInstance, check: bool = True) -> ABInstance:
    """Add two elements to B via a minimum-weight triple system and its uncovered pairs."""
    if check:
        _require_valid(inst)
    a, b = inst.a, inst.b
    y1, y2 = a + b, a + b + 1
    extra: list = []
    if a >= 2:
        t = min_weight_system(a)
        extra = _lift(t.blocks, y1) + _lift(t.blocks, y2) + _lift(uncovered_pairs(t), y1, y2)
    added = two_c_star(a) if a >= 2 else 0
    return _finish(a, b + 2, list(inst.system.blocks) + extra, len(inst) + added, check)


def construct_doubling(a: int) -> ABInstance:
    """f(a,a) system of size (2a^3 - a^2)/12 from an SQS on a/2 + 1 points."""
    if a % 12 not in (2, 6):
        raise UnsupportedParameters(f"doubling needs a = 2, 6 mod 12, got {a}")
    n = a // 2
    if not sqs_supported(n + 1):
        raise UnsupportedParameters(f"no SQS({n + 1}) available")
    even = [i for i in product((0, 1), repeat=4) if sum(i) % 2 == 0]
    blocks = []
    for blk in construct_sqs(n + 1).blocks:
        if n not in blk:
            z1, z2, z3, z4 = blk
            for i1, i2, i3, i4 in even:
                p1, p2, p3, p4 = z1 + i1 * n, z2 + i2 * n, z3 + i3 * n, z4 + i4 * n
                blocks += [(p1, p2, p3, 2 * n + p4), (p1, p2, p4, 2 * n + p3),
                           (p1, p3, p4, 2 * n + p2), (p2, p3, p4, 2 * n + p1)]
        else:
            # 30 blocks per block through n; every ordered (p, q) of its other
            # points, r the remaining one, e and d in {0, 1}
            for p, q, r in permutations(blk[:3]):
                blocks.append((p, q + n, 2 * n + r, 3 * n + r))
                for e in (0, 1):
                    blocks.append((p, p + n, q + e * n, 2 * n + q + e * n))
                    if q < r:
                        blocks.append((p + e * n, 3 * n + p - e * n, q, r))
                        blocks.append((p + e * n, 3 * n + p - e * n, q + n, r + n))
    blocks += [(i, i + n, 2 * n + i, 3 * n + i) for i in range(n)]
    return _finish(a, a, blocks, (2 * a ** 3 - a ** 2) // 12)


def mod12_size(a: int) -> int:
    return (4 * a ** 3 - 5 * a ** 2 + (16 if a % 12 == 4 else 0)) // 24


def construct_0_4_mod12(a: int) -> ABInstance:
    """f(a,a-1) system for a = 0 (mod 12), a > 12, or a = 4 (mod 12).

    Uses a large set of n-1 STS(n+1) on {0..n}, n = a/2; point n is the
    distinguished point of every member.
    """
    if not (a % 12 == 4 or (a % 12 == 0 and a > 12)):
        raise UnsupportedParameters(f"needs a = 4 mod 12 or a = 0 mod 12 with a > 12, got {a}")
    n = a // 2
    members = large_set(n + 1)
    even = [i for i in product((0, 1), repeat=4) if sum(i) % 2 == 0]
    blocks = []
    for j, sts in enumerate(members):
        lo, hi = 2 * n + j, 2 * n + j + (n - 1)
        for t in sts.blocks:
            if n not in t:
                z1, z2, z3 = t
                for i1, i2, i3, i4 in even:
                    blocks.append((z1 + i1 * n, z2 + i2 * n, z3 + i3 * n, hi if i4 else lo))
            else:
                z1, z2 = t[0], t[1]
                blocks += [(z1, z1 + n, z2, lo), (z1, z1 + n, z2 + n, lo),
                           (z2, z2 + n, z1, hi), (z2, z2 + n, z1 + n, hi)]
    if a % 12 == 0:
        leave = construct_packing_with_leave(a, "perfect_matching", [(i, i + n) for i in range(n)])
    else:
        leave = construct_packing_with_leave(a, "near_one_pair_short", [(i, i + n) for i in range(n - 1)])
    blocks += _lift(leave.blocks, 4 * n - 2)
    partial = ABInstance.build(a, a - 1, blocks).system
    inst = pair_completion(partial, a, a - 1)
    if len(inst) != mod12_size(a):
        raise AssertionError(f"mod12 construction has {len(inst)} blocks, expected {mod12_size(a)}")
    return inst


def _check_2_4_mod6(a: int) -> None:
    if a % 6 not in (2, 4) or a == 8:
        raise UnsupportedParameters(f"needs a = 2, 4 mod 6 and a != 8, got {a}")


def partial_2_4_mod6_size(a: int) -> int:
    return (a - 3) * (a * a + 2) // 6


def construct_partial_2_4_mod6(a: int) -> tuple[ABInstance, tuple[int, int, int]]:
    """b = a-3 system covering every qualifying triple but {a-3, a-2, a-1}."""
    _check_2_4_mod6(a)
    b = a - 3
    x = list(range(a))                      # x_1..x_a  ->  0..a-1
    y = [a + i for i in range(b)]           # y_1..y_b  ->  a..a+b-1
    fam = covering_family(a - 1)
    blocks = [q for i in range(b) for q in _lift(fam[i % len(fam)].blocks, y[i])]
    xa, xa1, xa2 = x[a - 1], x[a - 2], x[a - 3]
    for i in range(b):
        blocks += [(y[i], xa, xa1, x[i]), (y[i], xa, xa2, x[i])]
        for j in range(1, (a - 4) // 2 + 1):
            blocks.append((y[i], xa, x[(i + j) % b], x[(i - j) % b]))
    inst = _finish(a, b, blocks, partial_2_4_mod6_size(a), check=False)
    missing = (a - 3, a - 2, a - 1)
    covered = inst.system.covered_subsets(3)
    gaps = [t for t in combinations(range(a + b), 3) if t[1] < a and t not in covered]
    if gaps != [missing]:
        raise AssertionError(f"partial system leaves {gaps[:3]}, expected only {missing}")
    return inst, missing


def _packing_through(a: int, triple: tuple[int, int, int]) -> BlockSystem:
    """A maximum packing relabeled so that ``triple`` is one of its blocks."""
    pack = maximum_packing(a)
    if triple in pack.blocks:
        return pack
    src = pack.blocks[0]
    mapping = dict(zip(src, triple))
    rest_src = [v for v in range(a) if v not in mapping]
    rest_dst = [v for v in range(a) if v not in triple]
    mapping.update(zip(rest_src, rest_dst))
    return pack.relabel(mapping)


def mod6_size(a: int, j: int) -> int:
    return partial_2_4_mod6_size(a) + j * two_c_star(a)


def construct_2_4_mod6(a: int, j: int) -> ABInstance:
    _check_2_4_mod6(a)
    if j < 1:
        raise PreconditionFailed(f"j must be at least 1, got {j}")
    partial, missing = construct_partial_2_4_mod6(a)
    b = a - 3 + 2 * j
    pack = _packing_through(a, missing)
    leave = uncovered_pairs(pack)
    blocks = list(partial.system.blocks)
    first_new = a + (a - 3)
    for k in range(j):
        y1, y2 = first_new + 2 * k, first_new + 2 * k + 1
        blocks += _lift(pack.blocks, y1) + _lift(pack.blocks, y2) + _lift(leave, y1, y2)
    return _finish(a, b, blocks, mod6_size(a, j))


def construct_cyclic(a: int) -> ABInstance:
    """f(a,a) system of size C(a+1,3) over Z_a."""
    if a < 3:
        raise DomainError(f"cyclic construction needs a >= 3, got {a}")
    blocks = [(i, j, k, a + (i + j + k) % a) for i, j, k in combinations(range(a), 3)]
    blocks += [(i, j, a + (2 * i + j) % a, a + (i + 2 * j) % a) for i, j in combinations(range(a), 2)]
    return _finish(a, a, blocks, comb(a + 1, 3))


def six_t_size(a: int, j: int) -> int:
    return (a - 3) * a * a // 6 + j * (2 * a * a - a) // 6


def construct_6t(a: int, j: int, family: IngredientRecord | None = None) -> ABInstance:
    """b = a-3+2j system for a = 0 (mod 6), a >= 12.

    ``family`` holds a-3 coverings missing exactly the triples
    {3i, 3i+1, 3i+2}, followed by an STS on a+1 points (extra point a)
    containing those triples as blocks.
    """
    if a % 6 or a < 12:
        raise UnsupportedParameters(f"needs a = 0 mod 6 and a >= 12, got {a}")
    if j < 1:
        raise PreconditionFailed(f"j must be at least 1, got {j}")
    if family is None:
        family = lookup("SixTFamily", a=a)
    if family.kind != "SixTFamily" or not family.verified or int(family.parameters.get("a", -1)) != a:
        raise PreconditionFailed(f"expected a verified SixTFamily for a={a}")
    coverings, sts = family.payload[:-1], family.payload[-1]
    x0 = a
    through = [tuple(v for v in t if v != x0) for t in sts.blocks if x0 in t]
    inside = [t for t in sts.blocks if x0 not in t]
    blocks = [q for i, s in enumerate(coverings) for q in _lift(s.blocks, a + i)]
    first_new = a + (a - 3)
    for k in range(j):
        y1, y2 = first_new + 2 * k, first_new + 2 * k + 1
        blocks += _lift(inside, y1) + _lift(inside, y2) + _lift(through, y1, y2)
    return _finish(a, a - 3 + 2 * j, blocks, six_t_size(a, j))


def large_b_size(a: int) -> int:
    return (a - 1) * two_c_star(a)


def construct_large_b(a: int) -> ABInstance:
    """b = 2a-2 system of size (2a-2)*c_star(a) for even a.

    Uses a-1 minimum-weight triple systems whose union holds every triple of
    A; system i is lifted by the i-th pair of B and its uncovered pairs are
    completed with that pair. a = 6 goes through doubling and two +2 steps.
    """
    if a % 2 or a < 2:
        raise UnsupportedParameters(f"needs even a >= 2, got {a}")
    size = large_b_size(a)
    if a == 6:
        inst = extend_b_plus_2(extend_b_plus_2(construct_doubling(6)))
        if len(inst) != size:
            raise AssertionError(f"a=6 route gives {len(inst)}, expected {size}")
        return inst
    fam = min_weight_family(a)
    if len(fam) != a - 1:
        raise AssertionError(f"expected {a - 1} systems, got {len(fam)}")
    blocks = []
    for i, t in enumerate(fam):
        blocks += _lift(t.blocks, a + 2 * i) + _lift(t.blocks, a + 2 * i + 1)
    partial = ABInstance.build(a, 2 * a - 2, blocks).system
    odd = [p for p, u in uncovered_b_sets(partial, a).items() if len(u) % 2]
    if odd:
        raise AssertionError(f"pair {odd[0]} has an odd number of uncovered B elements")
    inst = pair_completion(partial, a, 2 * a - 2)
    if len(inst) != size:
        raise AssertionError(f"large-b construction has {len(inst)} blocks, expected {size}")
    return inst
