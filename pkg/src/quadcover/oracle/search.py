"""Exact minimum-cost set cover by branch and bound.

Targets and candidates are indexed once; a candidate is a bitmask of the
targets it covers. The search runs iterative deepening on the total cost:
for k = lower bound, lower bound + 1, ... it looks for the first cover of
cost <= k in a fixed depth-first order (branch on the first uncovered
target, candidates in input order). The first k that succeeds is optimal
and the witness found is canonical, whatever the worker count.

Pruning:
  * dominance: a candidate whose targets are a subset of another's at no
    smaller cost is dropped before the search (the optimum is unchanged);
  * counting bound: uncovered targets times the best cost-per-target ratio;
  * disjoint-target bound: targets no single candidate covers together each
    need their own block (greedy selection, cheapest block per target);
  * a table of (uncovered set, remaining budget) states already shown
    infeasible.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from threading import Lock
from typing import Hashable, Sequence

from quadcover.errors import DomainError

DEFAULT_NODES = 10_000_000
DEFAULT_SECONDS = 60.0


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_NODES
    seconds: float = DEFAULT_SECONDS


@dataclass(frozen=True)
class CoverInstance:
    targets: tuple[Hashable, ...]
    candidates: tuple[Hashable, ...]
    covers: tuple[tuple[int, ...], ...]      # target indices per candidate
    costs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.covers) != len(self.candidates):
            raise DomainError("one cover list per candidate required")
        if not self.costs:
            object.__setattr__(self, "costs", (1,) * len(self.candidates))
        if len(self.costs) != len(self.candidates) or any(c <= 0 for c in self.costs):
            raise DomainError("costs must be positive, one per candidate")

    @classmethod
    def from_relation(cls, targets: Sequence, candidates: Sequence, relation, costs=()) -> "CoverInstance":
        index = {t: i for i, t in enumerate(targets)}
        covers = []
        for c in candidates:
            covers.append(tuple(index[t] for t in relation(c) if t in index))
        return cls(tuple(targets), tuple(candidates), tuple(covers), tuple(costs))

    def uncoverable(self) -> list:
        hit = set()
        for cov in self.covers:
            hit.update(cov)
        return [t for i, t in enumerate(self.targets) if i not in hit]


@dataclass(frozen=True)
class OracleResult:
    status: str                     # optimal | infeasible | timeout_with_bounds
    optimum: int | None
    lower: int
    upper: int | None
    witness: tuple = ()
    nodes: int = 0
    root_bound: int = 0
    bound_names: tuple[str, ...] = field(default=("counting", "disjoint-targets"))

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def summary(self) -> str:
        if self.status == "optimal":
            return f"optimal {self.optimum}"
        if self.status == "infeasible":
            return "infeasible"
        up = "?" if self.upper is None else self.upper
        return f"bounds {self.lower}..{up}"


class _Exhausted(Exception):
    pass


class _Search:
    def __init__(self, inst: CoverInstance, budget: Budget):
        self.inst = inst
        self.budget = budget
        self.started = time.monotonic()
        self.nodes = 0
        self.lock = Lock()
        masks = [sum(1 << t for t in set(cov)) for cov in inst.covers]
        keep = self._undominated(masks, inst.costs)
        self.cand = keep                               # original candidate indices
        self.mask = [masks[i] for i in keep]
        self.cost = [inst.costs[i] for i in keep]
        n_t = len(inst.targets)
        self.full = (1 << n_t) - 1
        self.by_target: list[list[int]] = [[] for _ in range(n_t)]
        for j, m in enumerate(self.mask):
            for t in range(n_t):
                if m >> t & 1:
                    self.by_target[t].append(j)
        self.nbr = [0] * n_t
        self.cheapest = [0] * n_t
        for t in range(n_t):
            acc = 0
            for j in self.by_target[t]:
                acc |= self.mask[j]
            self.nbr[t] = acc
            self.cheapest[t] = min((self.cost[j] for j in self.by_target[t]), default=0)
        self.ratio = min((Fraction(c, bin(m).count("1")) for c, m in zip(self.cost, self.mask) if m),
                         default=Fraction(1))
        self.failed: dict[int, int] = {}

    @staticmethod
    def _undominated(masks: list[int], costs: Sequence[int]) -> list[int]:
        order = sorted(range(len(masks)), key=lambda i: (-bin(masks[i]).count("1"), costs[i], i))
        kept: list[int] = []
        for i in order:
            m = masks[i]
            if m == 0:
                continue
            if any((m | masks[j]) == masks[j] and costs[j] <= costs[i] for j in kept):
                continue
            kept.append(i)
        return sorted(kept)

    def bound(self, uncovered: int) -> int:
        if not uncovered:
            return 0
        count = self.ratio * bin(uncovered).count("1")
        lb1 = -(-count.numerator // count.denominator)
        lb2, avail = 0, uncovered
        while avail:
            t = (avail & -avail).bit_length() - 1
            lb2 += self.cheapest[t]
            avail &= ~self.nbr[t]
        return max(lb1, lb2)

    def _tick(self) -> None:
        with self.lock:
            self.nodes += 1
            n = self.nodes
        if n > self.budget.nodes or (n & 1023 == 0 and time.monotonic() - self.started > self.budget.seconds):
            raise _Exhausted

    def dfs(self, uncovered: int, left: int, chosen: list[int]) -> list[int] | None:
        if not uncovered:
            return list(chosen)
        if self.bound(uncovered) > left:
            return None
        seen = self.failed.get(uncovered)
        if seen is not None and seen >= left:
            return None
        self._tick()
        t = (uncovered & -uncovered).bit_length() - 1
        for j in self.by_target[t]:
            c = self.cost[j]
            if c > left:
                continue
            chosen.append(j)
            hit = self.dfs(uncovered & ~self.mask[j], left - c, chosen)
            chosen.pop()
            if hit is not None:
                return hit
        if len(self.failed) < 2_000_000:
            self.failed[uncovered] = max(left, self.failed.get(uncovered, -1))
        return None

    def level(self, k: int, workers: int) -> list[int] | None:
        uncovered = self.full
        if workers <= 1 or not uncovered:
            return self.dfs(uncovered, k, [])
        t = (uncovered & -uncovered).bit_length() - 1
        branches = [j for j in self.by_target[t] if self.cost[j] <= k]

        def run(j: int):
            return self.dfs(uncovered & ~self.mask[j], k - self.cost[j], [j])

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, branches))
        return next((r for r in results if r is not None), None)


def _greedy_upper(s: _Search) -> int:
    uncovered, total = s.full, 0
    while uncovered:
        best = max(range(len(s.mask)),
                   key=lambda j: (Fraction(bin(s.mask[j] & uncovered).count("1"), s.cost[j]), -j))
        total += s.cost[best]
        uncovered &= ~s.mask[best]
    return total


def exact_min_cover(inst: CoverInstance, budget: Budget | None = None, workers: int = 1,
                    upper: int | None = None, lower: int = 0) -> OracleResult:
    """Minimum total cost of candidates covering every target.

    ``upper``/``lower`` may pass known bounds (they only narrow the deepening
    range). The optimum and witness do not depend on ``workers``.
    """
    budget = budget or Budget()
    if inst.uncoverable():
        return OracleResult("infeasible", None, 0, None)
    s = _Search(inst, budget)
    root = s.bound(s.full)
    greedy = _greedy_upper(s)
    hi = greedy if upper is None else min(upper, greedy)
    k = max(root, lower)
    try:
        while k <= hi:
            hit = s.level(k, workers)
            if hit is not None:
                witness = tuple(inst.candidates[s.cand[j]] for j in hit)
                return OracleResult("optimal", k, k, k, witness, s.nodes, root)
            k += 1
    except _Exhausted:
        return OracleResult("timeout_with_bounds", None, k, hi, (), s.nodes, root)
    raise AssertionError("search exceeded a valid upper bound")
