"""Cover instances for the quantities the library bounds, and their exact solvers."""
from __future__ import annotations

from itertools import combinations

from quadcover.absystems.instance import ABInstance, qualifying_triples
from quadcover.designs.system import BlockSystem
from quadcover.errors import DomainError
from quadcover.oracle.search import Budget, CoverInstance, OracleResult, exact_min_cover


def f_instance(a: int, b: int, r: int = 4) -> CoverInstance:
    """Targets: triples with two or more elements in A. Candidates: r-sets with two or more A elements
    (blocks with at most one A element cover no target)."""
    if a < 0 or b < 0 or r < 3:
        raise DomainError(f"bad parameters a={a} b={b} r={r}")
    n = a + b
    targets = list(qualifying_triples(a, n))
    cands = [c for c in combinations(range(n), r) if c[1] < a]
    return CoverInstance.from_relation(targets, cands, lambda c: combinations(c, 3))


def exact_f_oracle(a: int, b: int, r: int = 4, budget: Budget | None = None, workers: int = 1,
                   upper: int | None = None) -> OracleResult:
    return exact_min_cover(f_instance(a, b, r), budget, workers, upper)


def lottery_instance(n: int) -> CoverInstance:
    """Targets and candidates are the 4-subsets; R covers K when they share three elements."""
    if n < 4:
        raise DomainError(f"lottery instance needs n >= 4, got {n}")
    quads = list(combinations(range(n), 4))
    index = {q: i for i, q in enumerate(quads)}
    covers = []
    for q in quads:
        hit = {index[q]}
        for tri in combinations(q, 3):
            for x in range(n):
                if x not in q:
                    hit.add(index[tuple(sorted(tri + (x,)))])
        covers.append(tuple(sorted(hit)))
    return CoverInstance(tuple(quads), tuple(quads), tuple(covers))


def exact_L(n: int, budget: Budget | None = None, workers: int = 1, upper: int | None = None) -> OracleResult:
    return exact_min_cover(lottery_instance(n), budget, workers, upper)


def covering_instance(a: int) -> CoverInstance:
    pairs = list(combinations(range(a), 2))
    triples = list(combinations(range(a), 3))
    return CoverInstance.from_relation(pairs, triples, lambda t: combinations(t, 2))


def exact_covering(a: int, budget: Budget | None = None) -> OracleResult:
    """C(a,3,2): fewest triples covering every pair."""
    if a < 3:
        raise DomainError(f"covering oracle needs a >= 3, got {a}")
    return exact_min_cover(covering_instance(a), budget)


def min_weight_instance(a: int) -> CoverInstance:
    """Weight doubled: a triple costs 2, leaving a pair uncovered costs 1."""
    pairs = list(combinations(range(a), 2))
    triples = list(combinations(range(a), 3))
    cands = [("T",) + t for t in triples] + [("P",) + p for p in pairs]
    covers = {p: i for i, p in enumerate(pairs)}
    cov = [tuple(covers[p] for p in combinations(t, 2)) for t in triples] + [(i,) for i in range(len(pairs))]
    return CoverInstance(tuple(pairs), tuple(cands), tuple(cov), (2,) * len(triples) + (1,) * len(pairs))


def exact_min_weight(a: int, budget: Budget | None = None) -> OracleResult:
    """2 * C_*(a): the optimum of the doubled-weight cover."""
    if a < 2:
        raise DomainError(f"minimum weight needs a >= 2, got {a}")
    return exact_min_cover(min_weight_instance(a), budget)


def exact_packing(a: int, max_nodes: int = 10_000_000) -> tuple[int, BlockSystem]:
    """P(a) by exhaustive search: the largest set of pairwise pair-disjoint triples.

    Branches on the first undecided pair (cover it with some triple, or leave
    it); bounded by free pairs / 3 and the per-point degree bound.
    """
    if a < 3:
        raise DomainError(f"packing oracle needs a >= 3, got {a}")
    pairs = list(combinations(range(a), 2))
    pid = {p: i for i, p in enumerate(pairs)}
    best: list = [[]]
    nodes = [0]

    def bound(free: int) -> int:
        deg = [0] * a
        m = free
        while m:
            i = (m & -m).bit_length() - 1
            x, y = pairs[i]
            deg[x] += 1
            deg[y] += 1
            m &= m - 1
        return min(bin(free).count("1") // 3, sum(d // 2 for d in deg) // 3)

    def rec(free: int, chosen: list) -> None:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise DomainError(f"packing search for a={a} exceeded {max_nodes} nodes")
        if len(chosen) + bound(free) <= len(best[0]):
            return
        if not free:
            best[0] = list(chosen)
            return
        i = (free & -free).bit_length() - 1
        x, y = pairs[i]
        for z in range(a):
            if z in (x, y):
                continue
            t = tuple(sorted((x, y, z)))
            bits = [pid[p] for p in combinations(t, 2)]
            if all(free >> k & 1 for k in bits):
                chosen.append(t)
                rec(free & ~sum(1 << k for k in bits), chosen)
                chosen.pop()
        rec(free & ~(1 << i), chosen)
        if len(chosen) > len(best[0]):
            best[0] = list(chosen)

    rec((1 << len(pairs)) - 1, [])
    return len(best[0]), BlockSystem.from_blocks(a, 3, best[0])


def witness_instance(a: int, b: int, result: OracleResult) -> ABInstance:
    """The oracle's witness as an (A,B)-system."""
    if not result.optimal:
        raise DomainError(f"no witness: {result.summary()}")
    return ABInstance.build(a, b, result.witness)
