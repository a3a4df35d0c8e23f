from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from quadcover.designs.system import Block, BlockSystem
from quadcover.errors import ShapeError


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid"
        return "uncovered " + " ".join(map(str, self.witness))


@dataclass(frozen=True)
class ABInstance:
    """Blocks on A = {0..a-1} and B = {a..a+b-1}."""

    a: int
    b: int
    system: BlockSystem

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ShapeError(f"negative part sizes a={self.a} b={self.b}")
        if self.system.n != self.a + self.b:
            raise ShapeError(f"system has n={self.system.n}, expected a+b={self.a + self.b}")

    @property
    def r(self) -> int:
        return self.system.r

    def __len__(self) -> int:
        return len(self.system)

    @classmethod
    def build(cls, a: int, b: int, blocks: Iterable[Iterable[int]], r: int = 4) -> "ABInstance":
        blocks = [tuple(sorted(blk)) for blk in blocks]
        multiset = len(set(blocks)) != len(blocks)
        return cls(a, b, BlockSystem.from_blocks(a + b, r, blocks, multiset=multiset))


def qualifying_triples(a: int, n: int) -> Iterator[Block]:
    """Triples of {0..n-1} with at least two elements below a, in lex order."""
    for t in combinations(range(n), 3):
        if t[1] < a:
            yield t


def first_uncovered(system: BlockSystem, a: int) -> Block | None:
    covered = system.covered_subsets(3)
    for t in qualifying_triples(a, system.n):
        if t not in covered:
            return t
    return None


def verify_ab(instance: ABInstance) -> Verdict:
    """Every triple meeting A in at least two elements lies in some block."""
    if not isinstance(instance, ABInstance):
        raise ShapeError("verify_ab expects an ABInstance")
    missing = first_uncovered(instance.system, instance.a)
    return Verdict(missing is None, missing)


def uncovered_b_sets(system: BlockSystem, a: int) -> dict[tuple[int, int], list[int]]:
    """For each A-pair, the B elements y with {x', x'', y} in no block."""
    covered = system.covered_subsets(3)
    out = {}
    for p in combinations(range(a), 2):
        out[p] = [y for y in range(a, system.n) if (p[0], p[1], y) not in covered]
    return out
