"""Lottery systems from three (A,B)-systems on a partition n = a + b + c."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from quadcover.absystems.bounds import exact_f
from quadcover.absystems.instance import ABInstance
from quadcover.absystems.recipes import Plan, best_plan
from quadcover.designs.system import BlockSystem
from quadcover.errors import DomainError, UnsupportedParameters
from quadcover.lottery.system import LotterySystem, verify_lottery


@dataclass(frozen=True)
class PartitionPlan:
    parts: tuple[int, int, int]
    recipes: tuple[str, str, str]
    sizes: tuple[int, int, int]
    plans: tuple[Plan | None, Plan | None, Plan | None] = field(default=(None, None, None), compare=False)
    skipped: tuple[tuple[tuple[int, int, int], str], ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def predicted(self) -> int:
        return sum(self.sizes)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        a, b, c = self.parts
        return (a, b), (b, c), (c, a)

    def describe(self) -> str:
        return "+".join(f"f({x},{y})" for x, y in self.pairs) + f" = {self.predicted}"


def _pair_score(x: int, y: int, mode: str) -> tuple[int, str, Plan | None] | str:
    """(size, recipe id, plan) for one pair, or the reason it is unavailable."""
    if mode == "constructive":
        plan = best_plan(x, y, "constructive")
        if plan is None:
            return f"no buildable recipe for f({x},{y})"
        return plan.size, plan.describe(), plan
    rep = exact_f(x, y, "theory")
    if rep.upper is None:
        return f"no upper bound for f({x},{y})"
    label = rep.recipe.describe() if rep.recipe is not None else "+".join(rep.upper_provenance)
    return rep.upper, label, rep.recipe


def ordered_partitions(n: int, min_part: int = 3):
    for a in range(min_part, n + 1):
        for b in range(min_part, n - a + 1):
            c = n - a - b
            if c >= min_part:
                yield a, b, c


@lru_cache(maxsize=None)
def partition_search(n: int, mode: str = "constructive", min_part: int = 3) -> PartitionPlan:
    """Cheapest ordered partition by per-pair recipe sizes; ties go to the smallest (a,b,c).

    Partitions with an unavailable pair are skipped and listed in ``skipped``.
    """
    if n < 3 * min_part:
        raise DomainError(f"n={n} has no partition into parts >= {min_part}")
    best, skipped = None, []
    for parts in ordered_partitions(n, min_part):
        a, b, c = parts
        scores = [_pair_score(x, y, mode) for x, y in ((a, b), (b, c), (c, a))]
        bad = [s for s in scores if isinstance(s, str)]
        if bad:
            skipped.append((parts, bad[0]))
            continue
        cand = PartitionPlan(parts, tuple(s[1] for s in scores), tuple(s[0] for s in scores),
                             tuple(s[2] for s in scores))
        if best is None or cand.predicted < best.predicted:
            best = cand
    if best is None:
        raise UnsupportedParameters(f"no supported partition of n={n}")
    return PartitionPlan(best.parts, best.recipes, best.sizes, best.plans, tuple(skipped))


def _place(inst: ABInstance, first: int, second: int, n: int) -> BlockSystem:
    """Map A onto [first, first+a) and B onto [second, second+b)."""
    a = inst.a
    mapping = {x: first + x if x < a else second + x - a for x in range(inst.a + inst.b)}
    return inst.system.relabel(mapping, n)


def assemble(a: int, b: int, c: int, recipes=None, verify: bool = True) -> LotterySystem:
    """Union of (A,B)-, (B,C)- and (C,A)-systems on A=[0,a), B=[a,a+b), C=[a+b,n).

    ``recipes`` may give a :class:`Plan` (or None for the default) per pair.
    """
    n = a + b + c
    if min(a, b, c) < 0:
        raise DomainError("parts must be non-negative")
    recipes = list(recipes) if recipes is not None else [None, None, None]
    if len(recipes) != 3:
        raise DomainError("need one recipe per pair")
    starts = (0, a, a + b)
    sizes = (a, b, c)
    blocks: list = []
    labels = []
    for i in range(3):
        j = (i + 1) % 3
        x, y = sizes[i], sizes[j]
        plan = recipes[i] if recipes[i] is not None else best_plan(x, y, "constructive")
        if plan is None:
            raise UnsupportedParameters(f"no buildable recipe for f({x},{y})")
        if (plan.a, plan.b) != (x, y):
            raise DomainError(f"recipe {plan.describe()} does not fit pair ({x},{y})")
        inst = plan.build()
        blocks += _place(inst, starts[i], starts[j], n).blocks
        labels.append(plan.describe())
    multiset = len(set(blocks)) != len(blocks)
    system = BlockSystem.from_blocks(n, 4, blocks, multiset=multiset)
    lot = LotterySystem(n, system, (a, b, c), tuple(labels))
    if verify:
        verdict = verify_lottery(lot)
        if not verdict:
            raise AssertionError(f"assembled system for {(a, b, c)} fails: {verdict.describe()}")
    return lot
