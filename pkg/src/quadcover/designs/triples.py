"""Packings, coverings and leave-constrained triple systems.

Systems built from Steiner triple systems when a direct construction exists,
otherwise by a deterministic backtracking search for an exact triangle
decomposition of a prescribed multigraph.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from quadcover.designs.numbers import covering_number, packing_number
from quadcover.designs.steiner import construct_sts
from quadcover.designs.system import BlockSystem
from quadcover.designs.verify import (check_covering, check_packing, is_k13_plus_matching,
                                      is_perfect_matching, leave_graph)
from quadcover.errors import SearchExhausted, UnsupportedParameters

LEAVE_KINDS = ("perfect_matching", "near_one_pair_short", "k13_plus_matching", "any")

DEFAULT_MAX_NODES = 2_000_000


def triangle_systems(n: int, demand: dict[tuple[int, int], int], *,
                     max_nodes: int = DEFAULT_MAX_NODES,
                     allowed: Callable[[tuple[int, int, int]], bool] | None = None,
                     order: Callable[[tuple[int, int, int]], object] | None = None,
                     ) -> Iterator[list[tuple[int, int, int]]]:
    """Yield decompositions of a multigraph into triangles.

    ``demand[(u, v)]`` is the number of triangles that must contain the pair;
    pairs absent from ``demand`` may not be used at all. The branching pair is
    the one with the fewest completions, ties going to the lexicographically
    first. Third points are tried in increasing order unless ``order`` (a sort
    key on triples) says otherwise; ``allowed`` filters triples out entirely.
    """
    cap = [[0] * n for _ in range(n)]
    for (u, v), k in demand.items():
        cap[u][v] = cap[v][u] = k
    open_pairs = {tuple(sorted(p)) for p, k in demand.items() if k > 0}
    chosen: list[tuple[int, int, int]] = []
    nodes = [0]

    def completions(u, v):
        cu, cv = cap[u], cap[v]
        ws = [w for w in range(n) if cu[w] and cv[w] and w != u and w != v]
        if allowed is not None:
            ws = [w for w in ws if allowed(tuple(sorted((u, v, w))))]
        return ws

    def take(t, sign):
        x, y, z = t
        for p, q in ((x, y), (x, z), (y, z)):
            cap[p][q] -= sign
            cap[q][p] -= sign
            if cap[p][q] == 0:
                open_pairs.discard((p, q))
            else:
                open_pairs.add((p, q))

    def rec():
        if not open_pairs:
            yield list(chosen)
            return
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise SearchExhausted(f"triangle search exceeded {max_nodes} nodes")
        best = None
        for p in sorted(open_pairs):
            ws = completions(*p)
            if best is None or len(ws) < len(best[1]):
                best = (p, ws)
                if len(ws) <= 1:
                    break
        (u, v), ws = best
        if order is not None:
            ws = sorted(ws, key=lambda w: order(tuple(sorted((u, v, w)))))
        for w in ws:
            t = tuple(sorted((u, v, w)))
            chosen.append(t)
            take(t, 1)
            yield from rec()
            take(t, -1)
            chosen.pop()

    yield from rec()


def find_triangle_system(n: int, demand: dict[tuple[int, int], int],
                         **kw) -> list[tuple[int, int, int]]:
    for sol in triangle_systems(n, demand, **kw):
        return sol
    raise SearchExhausted(f"no triangle decomposition on {n} points")


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _punctured_sts(a: int) -> BlockSystem:
    """STS(a+1) with its last point deleted: leave is a perfect matching."""
    sts = construct_sts(a + 1)
    return BlockSystem.from_blocks(a, 3, [b for b in sts.blocks if a not in b])


def _k13_leave(a: int) -> list[tuple[int, int]]:
    edges = [(0, 1), (0, 2), (0, 3)]
    edges += [(i, i + 1) for i in range(4, a, 2)]
    return edges


def _c4_leave(a: int) -> list[tuple[int, int]]:
    return [(0, 1), (1, 2), (2, 3), (0, 3)]


@lru_cache(maxsize=None)
def maximum_packing(a: int) -> BlockSystem:
    """A packing of ``packing_number(a)`` triples on ``a`` points."""
    if a < 3:
        raise UnsupportedParameters(f"packing needs a >= 3, got {a}")
    r = a % 6
    if r in (1, 3):
        return construct_sts(a)
    if r in (0, 2):
        return _punctured_sts(a)
    leave = _k13_leave(a) if r == 4 else _c4_leave(a)
    if a == 4:
        return BlockSystem.from_blocks(4, 3, [(1, 2, 3)])
    system = _packing_with_leave(a, tuple(leave))
    assert len(system) == packing_number(a)
    return system


@lru_cache(maxsize=None)
def _packing_with_leave(a: int, leave: tuple[tuple[int, int], ...]) -> BlockSystem:
    leave_set = {tuple(sorted(e)) for e in leave}
    required = [p for p in _all_pairs(a) if p not in leave_set]
    if len(required) % 3:
        raise UnsupportedParameters(f"{len(required)} pairs cannot be split into triples")
    triples = find_triangle_system(a, {p: 1 for p in required})
    return BlockSystem.from_blocks(a, 3, triples)


def _relabel_to_target(system: BlockSystem, have: Sequence[tuple[int, int]],
                       want: Sequence[tuple[int, int]]) -> BlockSystem:
    """Relabel so that the matching ``have`` becomes the matching ``want``.

    Both are lists of disjoint pairs of equal length; unmatched points are
    sent to the remaining labels in increasing order.
    """
    mapping: dict[int, int] = {}
    for (p, q), (s, t) in zip(sorted(have), sorted(want)):
        mapping[p], mapping[q] = s, t
    rest_src = [x for x in range(system.n) if x not in mapping]
    rest_dst = [x for x in range(system.n) if x not in set(mapping.values())]
    mapping.update(zip(rest_src, rest_dst))
    return system.relabel(mapping)


def construct_packing_with_leave(a: int, leave_kind: str = "any",
                                 target: Sequence[tuple[int, int]] | None = None) -> BlockSystem:
    """Triple system on ``a`` points whose uncovered pairs have a prescribed shape.

    ``perfect_matching``: a = 0 (mod 12), a/2 disjoint uncovered pairs.
    ``near_one_pair_short``: a = 4 (mod 12), (a-2)/2 disjoint uncovered pairs
    (one pair is covered twice, so this is not a packing).
    ``k13_plus_matching``: a = 4 (mod 6), leave is a star K_{1,3} plus a matching.
    ``any``: a maximum packing.

    ``target`` relabels the result so that its leave is exactly those pairs
    (only for the matching-type leaves).
    """
    if leave_kind not in LEAVE_KINDS:
        raise UnsupportedParameters(f"unknown leave kind {leave_kind!r}")
    if leave_kind == "any":
        system = maximum_packing(a)
    elif leave_kind == "perfect_matching":
        if a % 12 != 0 or a < 12:
            raise UnsupportedParameters(f"perfect-matching leave needs a = 0 mod 12, got {a}")
        system = _punctured_sts(a)
    elif leave_kind == "k13_plus_matching":
        if a % 6 != 4:
            raise UnsupportedParameters(f"K13-plus-matching leave needs a = 4 mod 6, got {a}")
        system = maximum_packing(a)
    else:
        if a % 12 != 4:
            raise UnsupportedParameters(f"near-perfect leave needs a = 4 mod 12, got {a}")
        base = maximum_packing(a)
        star = [e for e in leave_graph(base)
                if sum(1 for f in leave_graph(base) if set(e) & set(f)) == 3]
        center = next(x for x in star[0] if all(x in e for e in star))
        leaves = sorted(x for e in star for x in e if x != center)
        extra = (center, leaves[0], leaves[1])
        system = BlockSystem(a, 3, base.blocks + (tuple(sorted(extra)),))
    leave = leave_graph(system)
    if target is not None:
        if leave_kind in ("k13_plus_matching", "any") and not _is_matching(leave):
            raise UnsupportedParameters("target alignment needs a matching-type leave")
        target = [tuple(sorted(p)) for p in target]
        if len(target) != len(leave):
            raise UnsupportedParameters(f"target has {len(target)} pairs, leave has {len(leave)}")
        system = _relabel_to_target(system, leave, target)
        leave = leave_graph(system)
        assert sorted(leave) == sorted(target)
    _check_leave(system, leave_kind, leave)
    return system


def _is_matching(edges) -> bool:
    pts = [x for e in edges for x in e]
    return len(pts) == len(set(pts))


def _check_leave(system: BlockSystem, kind: str, leave) -> None:
    a = system.n
    if kind == "perfect_matching":
        ok = is_perfect_matching(leave, a) and len(system) == (a * a - 2 * a) // 6
    elif kind == "near_one_pair_short":
        ok = (_is_matching(leave) and len(leave) == (a - 2) // 2
              and len(system) == (a * a - 2 * a + 4) // 6)
    elif kind == "k13_plus_matching":
        ok = is_k13_plus_matching(leave, a) and len(system) == (a * a - 2 * a - 2) // 6
    else:
        ok = check_packing(system) is None and len(system) == packing_number(a)
    if not ok:
        raise AssertionError(f"{kind} system on {a} points has wrong leave {leave}")


def _covering_excess(a: int) -> list[tuple[int, int]]:
    """Pairs covered more than once by an optimal covering (one entry per extra cover).

    Up to relabeling this shape is forced: a perfect matching for a = 0 (mod 6),
    a star K_{1,3} plus a matching for a = 2, 4 (mod 6), one pair covered three
    times for a = 5 (mod 6).
    """
    r = a % 6
    if r in (1, 3):
        return []
    if r == 0:
        return [(i, i + 1) for i in range(0, a, 2)]
    if r == 5:
        return [(0, 1), (0, 1)]
    return _k13_leave(a)


def covering_demand(a: int, excess: Iterable[tuple[int, int]] | None = None) -> dict[tuple[int, int], int]:
    """Pair multiplicities of an optimal covering with the given excess pairs."""
    demand = {p: 1 for p in _all_pairs(a)}
    for p in (_covering_excess(a) if excess is None else excess):
        demand[tuple(sorted(p))] += 1
    return demand


def search_covering(a: int, *, forced: Iterable[tuple[int, int, int]] = (),
                    excess: Iterable[tuple[int, int]] | None = None,
                    allowed=None, order=None,
                    max_nodes: int = DEFAULT_MAX_NODES) -> BlockSystem | None:
    """First optimal covering containing ``forced`` (None if there is none).

    The excess multigraph is fixed (default: the canonical one for a), so a
    ``None`` answer only rules out coverings with that excess.
    """
    demand = covering_demand(a, excess)
    forced = [tuple(sorted(t)) for t in forced]
    for t in forced:
        for p in combinations(t, 2):
            if demand.get(p, 0) < 1:
                return None
            demand[p] -= 1
    demand = {p: k for p, k in demand.items() if k}
    for sol in triangle_systems(a, demand, allowed=allowed, order=order, max_nodes=max_nodes):
        return BlockSystem.from_blocks(a, 3, forced + sol)
    return None


@lru_cache(maxsize=None)
def construct_optimal_covering(a: int) -> BlockSystem:
    """Covering of all pairs of an a-set by ``covering_number(a)`` triples."""
    if a < 3:
        raise UnsupportedParameters(f"covering needs a >= 3, got {a}")
    size = covering_number(a)
    if a % 6 in (1, 3):
        system = construct_sts(a)
    else:
        triples = find_triangle_system(a, covering_demand(a))
        system = BlockSystem.from_blocks(a, 3, triples)
    problem = check_covering(system)
    if problem or len(system) != size:
        raise AssertionError(f"covering of {a} points failed: {problem}")
    return system


def enumerate_optimal_coverings(a: int) -> list[BlockSystem]:
    """Every optimal pair covering on ``a`` labeled points (a <= 7 only)."""
    if not 3 <= a <= 7:
        raise UnsupportedParameters(f"exhaustive covering enumeration is limited to a <= 7, got {a}")
    size = covering_number(a)
    pairs = _all_pairs(a)
    out = []
    for combo in combinations(combinations(range(a), 3), size):
        covered = {p for t in combo for p in combinations(t, 2)}
        if len(covered) == len(pairs):
            out.append(BlockSystem.from_blocks(a, 3, combo))
    return out
