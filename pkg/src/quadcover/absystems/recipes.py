"""Recipe search for upper bounds on f(a,b).

A plan is one base construction at some b0 <= b followed by +2 and +1
extensions. Two evaluation modes:

``theory``
    every construction whose existence is established mathematically, with
    its closed-form size (ingredients such as large sets are assumed), plus
    the greedy recipes at their built size.
``constructive``
    only constructions whose ingredients are available here; sizes are those
    of the systems actually built (the greedy recipes are built to measure).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from quadcover.absystems import constructions as cons
from quadcover.absystems.instance import ABInstance
from quadcover.designs import ingredients
from quadcover.designs.numbers import covering_number, mu_value, two_c_star
from quadcover.designs.steiner import sqs_supported
from quadcover.errors import DomainError, MissingIngredient, PreconditionFailed, UnsupportedParameters

MODES = ("theory", "constructive")

# Order doubles as the final tie-break between equally good plans.
BASE_RECIPES = ("small", "mu", "lambda", "partial-mu", "doubling", "cyclic",
                "mod12", "mod6", "6t", "large-b")


@dataclass(frozen=True)
class Plan:
    a: int
    b: int
    base: str
    b0: int
    size: int
    plus2: int = 0
    plus1: int = 0

    @property
    def steps(self) -> int:
        return 1 + self.plus2 + self.plus1

    @property
    def chain(self) -> tuple[str, ...]:
        return (self.base,) + ("plus2",) * self.plus2 + ("plus1",) * self.plus1

    def describe(self) -> str:
        parts = [f"{self.base}({self.a},{self.b0})"]
        if self.plus2:
            parts.append(f"plus2x{self.plus2}")
        if self.plus1:
            parts.append("plus1")
        return "+".join(parts)

    def build(self) -> ABInstance:
        inst = build_base(self.base, self.a, self.b0)
        for _ in range(self.plus2):
            inst = cons.extend_b_plus_2(inst, check=False)
        for _ in range(self.plus1):
            inst = cons.extend_b_plus_1(inst, check=False)
        if len(inst) != self.size:
            raise AssertionError(f"plan {self.describe()} built {len(inst)} blocks, predicted {self.size}")
        return inst


def build_base(name: str, a: int, b0: int) -> ABInstance:
    if name == "small":
        return cons.construct_small(a, b0)
    if name == "mu":
        return cons.construct_mu(a, b0)
    if name == "lambda":
        return cons.construct_lambda(a, b0)
    if name == "partial-mu":
        return cons.construct_partial_mu(a, b0)
    if name == "doubling":
        return cons.construct_doubling(a)
    if name == "cyclic":
        return cons.construct_cyclic(a)
    if name == "mod12":
        return cons.construct_0_4_mod12(a)
    if name == "mod6":
        return cons.construct_2_4_mod6(a, (b0 - a + 3) // 2)
    if name == "6t":
        return cons.construct_6t(a, (b0 - a + 3) // 2)
    if name == "large-b":
        return cons.construct_large_b(a)
    raise DomainError(f"unknown recipe {name!r}")


def _has(fn, *args) -> bool:
    try:
        fn(*args)
    except (MissingIngredient, UnsupportedParameters):
        return False
    return True


@lru_cache(maxsize=None)
def _built_size(name: str, a: int, b0: int) -> int | None:
    try:
        return len(build_base(name, a, b0))
    except (MissingIngredient, UnsupportedParameters, PreconditionFailed):
        return None


@lru_cache(maxsize=None)
def _large_b_available(a: int) -> bool:
    if a == 6:
        return sqs_supported(4)
    return _has(ingredients.min_weight_family, a)


def base_options(a: int, b: int, mode: str = "theory") -> list[tuple[str, int, int]]:
    """Every (recipe, b0, size) with b0 <= b usable for the given a."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    live = mode == "constructive"
    out: list[tuple[str, int, int]] = []
    if a <= 2:
        # nothing to cover for a < 2; a = 2 needs ceil(b/2) blocks on >= 4 points
        if a < 2 or b != 1:
            out.append(("small", b, 0 if a < 2 else (b + 1) // 2))
        return out
    mu = mu_value(a)
    if b >= mu and (not live or _has(ingredients.covering_family, a)):
        out += [("mu", b0, b0 * covering_number(a)) for b0 in range(mu, b + 1)]
    if a % 6 == 0:
        for b0 in range(1, min(a - 3, b) + 1):
            size = _built_size("lambda", a, b0)
            if not live and (size is None or size > comb(a, 3)):
                size = comb(a, 3)
            if size is not None:
                out.append(("lambda", b0, size))
    if a >= 4:
        for b0 in range(1, min(mu - 1, b) + 1):
            size = _built_size("partial-mu", a, b0)
            if size is not None:
                out.append(("partial-mu", b0, size))
    if a % 12 in (2, 6) and b >= a and (not live or sqs_supported(a // 2 + 1)):
        out.append(("doubling", a, (2 * a ** 3 - a ** 2) // 12))
    if b >= a:
        out.append(("cyclic", a, comb(a + 1, 3)))
    if (a % 12 == 4 or (a % 12 == 0 and a > 12)) and b >= a - 1:
        if not live or _has(ingredients.large_set, a // 2 + 1):
            out.append(("mod12", a - 1, cons.mod12_size(a)))
    if a % 6 in (2, 4) and a != 8 and (not live or _has(ingredients.covering_family, a - 1)):
        out += [("mod6", a - 3 + 2 * j, cons.mod6_size(a, j)) for j in range(1, (b - a + 3) // 2 + 1)]
    if a % 6 == 0 and a >= 12 and (not live or ingredients.available("SixTFamily", a=a)):
        out += [("6t", a - 3 + 2 * j, cons.six_t_size(a, j)) for j in range(1, (b - a + 3) // 2 + 1)]
    if a % 2 == 0 and b >= 2 * a - 2 and (not live or _large_b_available(a)):
        out.append(("large-b", 2 * a - 2, cons.large_b_size(a)))
    return out


def extension_cost(a: int, k: int) -> int:
    """Blocks added by the cheapest chain of +2/+1 steps growing B by k."""
    if a < 2:
        return 0
    return (k // 2) * two_c_star(a) + (k % 2) * covering_number(a)


@lru_cache(maxsize=None)
def best_plan(a: int, b: int, mode: str = "theory", only: str | None = None) -> Plan | None:
    """Smallest plan for (a, b); ties go to fewer steps, then recipe order.

    ``only`` restricts the base construction to one recipe name.
    """
    if a < 0 or b < 0:
        raise DomainError(f"negative parameters ({a},{b})")
    if only is not None and only not in BASE_RECIPES:
        raise DomainError(f"unknown recipe {only!r}; choose from {', '.join(BASE_RECIPES)}")
    best, best_key = None, None
    for name, b0, size in base_options(a, b, mode):
        if only is not None and name != only:
            continue
        k = b - b0
        if a == 2 and name != "small":
            continue
        plan = Plan(a, b, name, b0, size + extension_cost(a, k), k // 2, k % 2)
        key = (plan.size, plan.steps, BASE_RECIPES.index(name), b0)
        if best_key is None or key < best_key:
            best, best_key = plan, key
    return best
