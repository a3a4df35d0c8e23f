"""(A,B)-systems with blocks of size r and the lottery bound built from them."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from quadcover.absystems.instance import ABInstance, Verdict, first_uncovered
from quadcover.absystems.recipes import best_plan
from quadcover.designs.ingredients import IngredientRecord, lookup
from quadcover.designs.system import BlockSystem
from quadcover.errors import DomainError, MissingIngredient, PreconditionFailed, ShapeError
from quadcover.lottery.system import first_failing_quadruple


@dataclass(frozen=True)
class RSystemInstance:
    """Blocks of size r on A = {0..a-1}, B = {a..a+b-1}."""

    a: int
    b: int
    system: BlockSystem

    def __post_init__(self) -> None:
        if self.system.n != self.a + self.b:
            raise ShapeError(f"system has n={self.system.n}, expected {self.a + self.b}")
        if self.system.r < 3:
            raise ShapeError(f"block size must be at least 3, got {self.system.r}")

    @property
    def r(self) -> int:
        return self.system.r

    def __len__(self) -> int:
        return len(self.system)

    @classmethod
    def from_ab(cls, inst: ABInstance) -> "RSystemInstance":
        return cls(inst.a, inst.b, inst.system)


def verify_r(inst: RSystemInstance | ABInstance) -> Verdict:
    """Every triple with at least two elements in A lies in a block (any r)."""
    missing = first_uncovered(inst.system, inst.a)
    return Verdict(missing is None, missing)


def t_opt(r: int) -> int:
    """Size of X cap A maximizing C(t,2)(r-t); ties at r = 2 mod 3 go to the smaller t."""
    if r < 4:
        raise DomainError(f"t(r) needs r >= 4, got {r}")
    m, rem = divmod(r, 3)
    return 2 * m if rem == 0 else 2 * m + 1


def lower_bound_fr(a: int, b: int, r: int) -> int:
    t = t_opt(r)
    den = (r - t) * comb(t, 2)
    return -(-b * comb(a, 2) // den)


def construct_f5(s35: IngredientRecord | None = None, a: int | None = None) -> RSystemInstance:
    """f_5(a,a) system of size a^2(a-1)/12 from an S(3,5,a+1).

    Point a of the Steiner system plays the role of the extra element; for
    each i in A the blocks through i lose i, trade a for i, and gain y_i.
    """
    if s35 is None:
        if a is None:
            raise DomainError("give an S(3,5,a+1) record or a")
        s35 = lookup("SteinerS35", n=a + 1)
    if s35.kind != "SteinerS35" or not s35.verified:
        raise PreconditionFailed("expected a verified SteinerS35 record")
    steiner = s35.system
    a = steiner.n - 1
    blocks = []
    for i in range(a):
        for blk in steiner.blocks:
            if i not in blk:
                continue
            rest = [i if x == a else x for x in blk if x != i]
            blocks.append(tuple(rest) + (a + i,))
    inst = RSystemInstance(a, a, BlockSystem.from_blocks(2 * a, 5, blocks))
    if len(inst) != a * a * (a - 1) // 12:
        raise AssertionError(f"f5 construction has {len(inst)} blocks")
    if not verify_r(inst):
        raise AssertionError(f"f5 construction invalid: {verify_r(inst).describe()}")
    return inst


def construct_f6(resolution: IngredientRecord | None = None, b: int = 0, a: int | None = None) -> RSystemInstance:
    """f_6(a,b) system of size (b/2) a(a-1)/12 from a 2-resolution of an SQS(a).

    Class j of the resolution (cycled when b/2 exceeds the class count) is
    padded with the pair {y_2j, y_2j+1}.
    """
    if resolution is None:
        if a is None:
            raise DomainError("give a ResolvableSQS record or a")
        resolution = lookup("ResolvableSQS", n=a)
    if resolution.kind != "ResolvableSQS" or not resolution.verified:
        raise PreconditionFailed("expected a verified ResolvableSQS record")
    classes = resolution.payload
    a = classes[0].n
    if b % 2 or b < a - 2:
        raise PreconditionFailed(f"b must be even and at least {a - 2}, got {b}")
    blocks = []
    for j in range(b // 2):
        y1, y2 = a + 2 * j, a + 2 * j + 1
        blocks += [blk + (y1, y2) for blk in classes[j % len(classes)].blocks]
    multiset = len(set(map(tuple, map(sorted, blocks)))) != len(blocks)
    inst = RSystemInstance(a, b, BlockSystem.from_blocks(a + b, 6, blocks, multiset=multiset))
    if len(inst) != (b // 2) * a * (a - 1) // 12:
        raise AssertionError(f"f6 construction has {len(inst)} blocks")
    if not verify_r(inst):
        raise AssertionError(f"f6 construction invalid: {verify_r(inst).describe()}")
    return inst


def best_r_system(a: int, b: int, r: int) -> RSystemInstance:
    """A verified f_r(a,b) system from the available constructions."""
    if r == 4:
        plan = best_plan(a, b, "constructive")
        if plan is None:
            raise MissingIngredient(f"no recipe for f_4({a},{b})")
        return RSystemInstance.from_ab(plan.build())
    if r == 5 and a == b:
        return construct_f5(a=a)
    if r == 6 and a % 12 == 4:
        return construct_f6(b=b, a=a)
    raise MissingIngredient(f"no construction for f_{r}({a},{b})")


@dataclass(frozen=True)
class RLotteryBound:
    n: int
    r: int
    value: int
    parts: tuple[int, int, int]
    system: BlockSystem | None
    verified: bool


def bound_L_r(a: int, b: int, c: int, r: int, systems=None, assemble: bool = True) -> RLotteryBound:
    """L(a+b+c, r, 3, 4) <= f_r(a,b) + f_r(b,c) + f_r(c,a).

    ``systems`` may supply the three component systems (any of them None to
    use a construction); supplied systems are verified first.
    """
    sizes = (a, b, c)
    systems = list(systems) if systems is not None else [None, None, None]
    comps = []
    for i in range(3):
        x, y = sizes[i], sizes[(i + 1) % 3]
        s = systems[i]
        if s is None:
            s = best_r_system(x, y, r)
        if (s.a, s.b, s.system.r) != (x, y, r):
            raise DomainError(f"component {i} has shape ({s.a},{s.b},r={s.system.r}), expected ({x},{y},r={r})")
        if not verify_r(s):
            raise PreconditionFailed(f"component {i} is not a valid system: {verify_r(s).describe()}")
        comps.append(s)
    total = sum(len(s) for s in comps)
    n = a + b + c
    if not assemble:
        return RLotteryBound(n, r, total, sizes, None, False)
    starts = (0, a, a + b)
    blocks = []
    for i, s in enumerate(comps):
        first, second = starts[i], starts[(i + 1) % 3]
        mapping = {x: first + x if x < s.a else second + x - s.a for x in range(s.a + s.b)}
        blocks += s.system.relabel(mapping, n).blocks
    multiset = len(set(blocks)) != len(blocks)
    system = BlockSystem.from_blocks(n, r, blocks, multiset=multiset)
    ok = first_failing_quadruple(system) is None
    if not ok:
        raise AssertionError(f"assembled ({n},{r},3,4) system fails verification")
    return RLotteryBound(n, r, total, sizes, system, True)
