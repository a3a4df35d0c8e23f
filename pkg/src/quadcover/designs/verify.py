"""Predicates for the classical designs used as ingredients.

Each ``check_*`` returns ``None`` when the system has the property and a short
human-readable description of the first violation otherwise.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable, Sequence

from quadcover.designs.system import Block, BlockSystem


def subset_counts(system: BlockSystem, t: int) -> Counter:
    c: Counter = Counter()
    for b in system.blocks:
        c.update(combinations(b, t))
    return c


def check_steiner(system: BlockSystem, t: int) -> str | None:
    """Every t-subset of the ground set lies in exactly one block."""
    counts = subset_counts(system, t)
    for s in combinations(range(system.n), t):
        k = counts.get(s, 0)
        if k != 1:
            return f"{t}-subset {s} covered {k} times"
    return None


def check_sts(system: BlockSystem) -> str | None:
    if system.r != 3:
        return f"block size {system.r}, expected 3"
    return check_steiner(system, 2)


def check_sqs(system: BlockSystem) -> str | None:
    if system.r != 4:
        return f"block size {system.r}, expected 4"
    return check_steiner(system, 3)


def check_covering(system: BlockSystem, t: int = 2) -> str | None:
    covered = system.covered_subsets(t)
    for s in combinations(range(system.n), t):
        if s not in covered:
            return f"{t}-subset {s} uncovered"
    return None


def check_packing(system: BlockSystem, t: int = 2) -> str | None:
    for s, k in sorted(subset_counts(system, t).items()):
        if k > 1:
            return f"{t}-subset {s} covered {k} times"
    return None


def leave_graph(system: BlockSystem) -> list[tuple[int, int]]:
    """Pairs of the ground set that no block covers."""
    covered = system.covered_subsets(2)
    return [p for p in combinations(range(system.n), 2) if p not in covered]


def is_perfect_matching(edges: Sequence[tuple[int, int]], n: int) -> bool:
    seen = [x for e in edges for x in e]
    return len(seen) == n and len(set(seen)) == n


def is_matching(edges: Sequence[tuple[int, int]]) -> bool:
    seen = [x for e in edges for x in e]
    return len(seen) == len(set(seen))


def is_k13_plus_matching(edges: Sequence[tuple[int, int]], n: int) -> bool:
    deg = Counter(x for e in edges for x in e)
    centers = [x for x, d in deg.items() if d == 3]
    if len(centers) != 1 or any(d not in (1, 3) for d in deg.values()):
        return False
    return len(deg) == n and len(edges) == 3 + (n - 4) // 2


def check_disjoint(systems: Iterable[BlockSystem]) -> str | None:
    owner: dict[Block, int] = {}
    for i, s in enumerate(systems):
        for b in s.blocks:
            if b in owner:
                return f"block {b} shared by members {owner[b]} and {i}"
            owner[b] = i
    return None


def check_union_covers_all(systems: Sequence[BlockSystem], t: int = 3) -> str | None:
    """The union of the members' blocks contains every t-subset as a block."""
    if not systems:
        return "empty family"
    n = systems[0].n
    have = {b for s in systems for b in s.blocks}
    for s in combinations(range(n), t):
        if s not in have:
            return f"{t}-subset {s} is not a block of any member"
    return None
