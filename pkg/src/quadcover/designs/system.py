from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from quadcover.errors import ShapeError

Block = tuple[int, ...]


def _normalize(block: Iterable[int]) -> Block:
    return tuple(sorted(int(x) for x in block))


@dataclass(frozen=True)
class BlockSystem:
    """A family of r-subsets of ``{0, ..., n-1}`` kept in canonical form.

    Blocks are sorted tuples and the block list is sorted lexicographically, so
    two systems with the same blocks compare (and serialize) identically.
    """

    n: int
    r: int
    blocks: tuple[Block, ...] = ()
    multiset: bool = False

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 1:
            raise ShapeError(f"bad shape n={self.n} r={self.r}")
        normed = sorted(_normalize(b) for b in self.blocks)
        for b in normed:
            if len(b) != self.r:
                raise ShapeError(f"block {b} does not have {self.r} elements")
            if len(set(b)) != self.r:
                raise ShapeError(f"block {b} repeats an element")
            if b and (b[0] < 0 or b[-1] >= self.n):
                raise ShapeError(f"block {b} outside ground set of size {self.n}")
        if not self.multiset:
            for prev, cur in zip(normed, normed[1:]):
                if prev == cur:
                    raise ShapeError(f"duplicate block {cur}")
        object.__setattr__(self, "blocks", tuple(normed))

    @classmethod
    def from_blocks(cls, n: int, r: int, blocks: Iterable[Iterable[int]],
                    multiset: bool = False) -> "BlockSystem":
        return cls(n, r, tuple(_normalize(b) for b in blocks), multiset)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __contains__(self, block: object) -> bool:
        if not isinstance(block, (tuple, list, set, frozenset)):
            return False
        return _normalize(block) in set(self.blocks)

    def union(self, other: "BlockSystem", multiset: bool = False) -> "BlockSystem":
        if other.r != self.r:
            raise ShapeError("cannot merge systems with different block sizes")
        n = max(self.n, other.n)
        blocks = self.blocks + other.blocks
        if not multiset:
            blocks = tuple(dict.fromkeys(blocks))
        return BlockSystem(n, self.r, blocks, multiset)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], n: int | None = None) -> "BlockSystem":
        """Apply an element map (``mapping[old] -> new``) to every block."""
        new_n = self.n if n is None else n
        return BlockSystem(new_n, self.r,
                           tuple(_normalize(mapping[x] for x in b) for b in self.blocks),
                           self.multiset)

    def covered_subsets(self, t: int) -> set[Block]:
        out: set[Block] = set()
        for b in self.blocks:
            out.update(combinations(b, t))
        return out

    def degree(self, x: int) -> int:
        return sum(1 for b in self.blocks if x in b)


@dataclass(frozen=True)
class TripleSystemWeight:
    """Number of triples plus half the number of uncovered pairs.

    ``weight`` is stored as a :class:`fractions.Fraction`; ``twice`` is the
    integer ``2 * weight``.
    """

    triple_count: int
    uncovered_pair_count: int
    weight: Fraction = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight",
                           self.triple_count + Fraction(self.uncovered_pair_count, 2))

    @property
    def twice(self) -> int:
        return 2 * self.triple_count + self.uncovered_pair_count


def uncovered_pairs(system: BlockSystem) -> list[tuple[int, int]]:
    covered = system.covered_subsets(2)
    return [p for p in combinations(range(system.n), 2) if p not in covered]


def weight_of(triples: BlockSystem) -> TripleSystemWeight:
    """Weight of a triple system: triples + uncovered pairs / 2, exactly."""
    if triples.r != 3:
        raise ShapeError(f"weight is defined for triple systems, got r={triples.r}")
    return TripleSystemWeight(len(triples), len(uncovered_pairs(triples)))
