"""Lower bounds, closed-form exact values and combined reports for f(a,b)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil, comb

from quadcover.absystems.recipes import MODES, Plan, best_plan
from quadcover.designs.numbers import c_star, covering_number, two_c_star
from quadcover.errors import DomainError


def _check(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise DomainError(f"f(a,b) needs a, b >= 0, got ({a},{b})")


def lower_bounds(a: int, b: int) -> dict[str, int]:
    """Every applicable lower bound, keyed by provenance name."""
    _check(a, b)
    if a < 2:
        return {"trivial": 0}
    out = {"weight": ceil(b * c_star(a))}
    # a block holds at most four triples with two or more elements in A
    out["counting"] = -(-(comb(a, 3) + b * comb(a, 2)) // 4)
    if a % 6 in (0, 2) and b % 2 == 1:
        out["weight+covering"] = (b - 1) * c_star(a) + covering_number(a)
    return {k: int(v) for k, v in out.items()}


def lower_bound_f(a: int, b: int) -> tuple[int, list[str]]:
    """Best lower bound on f(a,b) with the names of the bounds attaining it."""
    bounds = lower_bounds(a, b)
    best = max(bounds.values())
    return best, [k for k, v in bounds.items() if v == best]


def theorem_value(a: int, b: int) -> tuple[int, str] | None:
    """Closed-form f(a,b) where one is proven, with its provenance name.

    The value is always attained by a construction; it matches the lower
    bound except for a = 4 (mod 6), a >= 10 with odd b in the large-b
    family, where only the upper direction is established.
    """
    _check(a, b)
    if a % 2 == 1 and a >= 3 and b >= a - 2 and not (a == 7 and b < 6):
        return b * covering_number(a), "exact-odd"
    if a % 12 in (2, 6) and b >= a:
        pair = (2 * a * a - a) // 6
        if b % 2 == 0:
            return (b // 2) * pair, "exact-2-6-mod-12"
        return ((b - 1) // 2) * pair + covering_number(a), "exact-2-6-mod-12"
    if a % 2 == 0 and a >= 2 and b >= 2 * a - 2:
        if b % 2 == 0:
            return (b // 2) * two_c_star(a), "exact-large-b"
        return ((b - 1) // 2) * two_c_star(a) + covering_number(a), "exact-large-b"
    return None


@dataclass(frozen=True)
class ABBoundReport:
    a: int
    b: int
    lower: int
    upper: int | None
    lower_provenance: tuple[str, ...]
    upper_provenance: tuple[str, ...]
    plan: Plan | None = field(default=None, compare=False)

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def recipe(self) -> Plan | None:
        """The plan, when it reproduces the upper bound."""
        if self.plan is not None and self.plan.size == self.upper:
            return self.plan
        return None

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def line(self) -> str:
        up = "none" if self.upper is None else str(self.upper)
        return (f"f({self.a},{self.b}): lower={self.lower} upper={up} "
                f"exact={'yes' if self.exact else 'no'} "
                f"({', '.join(self.lower_provenance)} / {', '.join(self.upper_provenance) or '-'})")

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "lower": self.lower, "upper": self.upper,
                "exact": self.exact, "lower_provenance": list(self.lower_provenance),
                "upper_provenance": list(self.upper_provenance),
                "recipe": None if self.recipe is None else self.recipe.describe()}


@lru_cache(maxsize=None)
def exact_f(a: int, b: int, mode: str = "theory") -> ABBoundReport:
    """Combine lower bounds, proven closed forms and the best recipe plan.

    In ``constructive`` mode the recipe must be buildable from available
    ingredients; closed forms still count as proven upper bounds.
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    lower, lprov = lower_bound_f(a, b)
    plan = best_plan(a, b, mode)
    thm = theorem_value(a, b)
    upper, uprov = None, ()
    if plan is not None:
        upper, uprov = plan.size, (plan.describe(),)
    if thm is not None and (upper is None or thm[0] < upper):
        upper, uprov = thm[0], (thm[1],)
    elif thm is not None and thm[0] == upper:
        uprov = (thm[1],) + tuple(uprov)
    if upper is not None and upper < lower:
        raise AssertionError(f"f({a},{b}): upper {upper} below lower {lower}")
    return ABBoundReport(a, b, lower, upper, tuple(lprov), tuple(uprov), plan)
