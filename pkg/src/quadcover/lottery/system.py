from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from quadcover.absystems.instance import Verdict
from quadcover.designs.system import BlockSystem
from quadcover.errors import ShapeError


@dataclass(frozen=True)
class LotterySystem:
    """An (n,4,3,4)-lottery candidate, optionally tagged with its partition."""

    n: int
    system: BlockSystem
    partition: tuple[int, int, int] | None = None
    recipes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.system.r != 4:
            raise ShapeError(f"lottery blocks have size 4, got r={self.system.r}")
        if self.system.n != self.n:
            raise ShapeError(f"system has n={self.system.n}, expected {self.n}")

    def __len__(self) -> int:
        return len(self.system)


def _first_failure(n: int, covered: frozenset, first: int) -> tuple[int, ...] | None:
    # K fails iff none of its four triples lies inside a block
    for rest in combinations(range(first + 1, n), 3):
        k = (first,) + rest
        a, b, c, d = k
        if ((a, b, c) not in covered and (a, b, d) not in covered
                and (a, c, d) not in covered and (b, c, d) not in covered):
            return k
    return None


def first_failing_quadruple(system: BlockSystem, workers: int = 1) -> tuple[int, ...] | None:
    """Lexicographically first 4-subset meeting every block in at most 2 elements.

    Works for any block size; sharded by the smallest element of K, and the
    result does not depend on ``workers``.
    """
    n = system.n
    covered = frozenset(system.covered_subsets(3))
    firsts = range(max(n - 3, 0))
    if workers <= 1:
        for f in firsts:
            hit = _first_failure(n, covered, f)
            if hit is not None:
                return hit
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        hits = [h for h in pool.map(lambda f: _first_failure(n, covered, f), firsts) if h is not None]
    return min(hits) if hits else None


def verify_lottery(sys: LotterySystem, workers: int = 1) -> Verdict:
    """Exhaustive check over all C(n,4) quadruples; the witness is the first failure."""
    hit = first_failing_quadruple(sys.system, workers)
    return Verdict(hit is None, hit)
