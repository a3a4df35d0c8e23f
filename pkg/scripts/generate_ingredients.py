"""Regenerate the bundled design files under src/quadcover/designs/data.

Every search here is deterministic (fixed seeds, sorted candidate order), and
every result is verified through the same code path that loads it at runtime.

    python scripts/generate_ingredients.py [--only NAME ...] [--out DIR]
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path

from quadcover.designs import fileformat
from quadcover.designs.exactcover import first, solve
from quadcover.designs.ingredients import make_record
from quadcover.designs.numbers import covering_number, mu_value
from quadcover.designs.steiner import _boolean_sqs
from quadcover.designs.system import BlockSystem
from quadcover.designs.triples import _covering_excess, search_covering, triangle_systems, covering_demand

DATA = Path(__file__).resolve().parents[1] / "src" / "quadcover" / "designs" / "data"


def sqs10() -> fileformat.Design:
    triples = list(combinations(range(10), 3))
    rows = {q: list(combinations(q, 3)) for q in combinations(range(10), 4)}
    sol = first(triples, rows)
    return fileformat.Design("sqs", BlockSystem.from_blocks(10, 4, sol), {}, "generated")


def large_set_sts(v: int) -> list[BlockSystem]:
    """v-2 disjoint STS(v) as the orbit of one STS under x -> x+1 (mod v-2).

    The two points v-2 and v-1 are fixed. A base system with exactly one
    triple from each orbit has pairwise disjoint translates covering all
    triples (v-2 is prime for the orders used here).
    """
    m = v - 2

    def shift(t, k):
        return tuple(sorted(x if x >= m else (x + k) % m for x in t))

    orbit_of = {}
    orbits = []
    for t in combinations(range(v), 3):
        if t in orbit_of:
            continue
        idx = len(orbits)
        members = {shift(t, k) for k in range(m)}
        if len(members) != m:
            raise RuntimeError(f"short orbit {sorted(members)}")
        for u in members:
            orbit_of[u] = idx
        orbits.append(idx)
    pairs = list(combinations(range(v), 2))
    columns = pairs + [("orbit", i) for i in orbits]
    rows = {t: list(combinations(t, 2)) + [("orbit", orbit_of[t])] for t in orbit_of}
    base = first(columns, rows)
    if base is None:
        raise RuntimeError(f"no orbit-based large set for v={v}")
    return [BlockSystem.from_blocks(v, 3, [shift(t, k) for t in base]) for k in range(m)]


def covering_family_7() -> list[BlockSystem]:
    pairs = list(combinations(range(7), 2))
    rows = {t: list(combinations(t, 2)) for t in combinations(range(7), 3)}
    systems = [BlockSystem.from_blocks(7, 3, s) for s in solve(pairs, rows)]
    everything = set(combinations(range(7), 3))
    for combo in combinations(range(len(systems)), 6):
        if set().union(*(systems[i].blocks for i in combo)) == everything:
            return [systems[i] for i in combo]
    raise RuntimeError("no 6 STS(7) cover all triples")


def _random_excess(a: int, rng: random.Random) -> list[tuple[int, int]]:
    perm = list(range(a))
    rng.shuffle(perm)
    return [tuple(sorted((perm[u], perm[v]))) for u, v in _covering_excess(a)]


def greedy_covering_family(a: int, count: int, seed: int = 1, tries: int = 40,
                           restarts: int = 200) -> list[BlockSystem]:
    """``count`` optimal coverings whose union contains every triple.

    Each member is the best of several randomized searches, scored by how many
    not-yet-used triples it contains; the last member is forced to contain the
    remaining triples when they fit.
    """
    everything = set(combinations(range(a), 3))
    for attempt in range(restarts):
        rng = random.Random(seed * 1000 + attempt)
        used: set = set()
        members: list[BlockSystem] = []
        for k in range(count):
            missing = sorted(everything - used)
            best = None
            if k == count - 1:
                for _ in range(tries):
                    cand = search_covering(a, forced=missing, excess=_random_excess(a, rng),
                                           max_nodes=20_000)
                    if cand is not None:
                        best = cand
                        break
            else:
                for _ in range(tries):
                    rank = {t: rng.random() for t in everything}
                    cand = None
                    try:
                        cand = search_covering(a, excess=_random_excess(a, rng),
                                               order=lambda t: (t in used, rank[t]),
                                               max_nodes=20_000)
                    except Exception:
                        cand = None
                    if cand is None:
                        continue
                    gain = len(set(cand.blocks) - used)
                    if best is None or gain > best[0]:
                        best = (gain, cand)
                best = best[1] if best else None
            if best is None:
                break
            members.append(best)
            used |= set(best.blocks)
        if len(members) == count and used == everything:
            return members
    raise RuntimeError(f"no covering family for a={a} with {count} members")


def orbit_covering_family(a: int, m: int, seed: int = 0, tries: int = 50) -> list[BlockSystem]:
    """m optimal coverings forming one orbit of x -> x+1 (mod m) on 0..m-1.

    Points m..a-1 are fixed. The base covering takes one triple from every
    orbit of triples (plus any spare triples the covering size allows), so
    the m translates together contain every triple.
    """
    def shift(t, k):
        return tuple(sorted((x + k) % m if x < m else x for x in t))

    orbit_of, n_orbits = {}, 0
    for t in combinations(range(a), 3):
        if t in orbit_of:
            continue
        for k in range(m):
            orbit_of[shift(t, k)] = n_orbits
        n_orbits += 1
    spare = covering_number(a) - n_orbits
    if spare < 0:
        raise RuntimeError(f"{n_orbits} orbits exceed the covering size for a={a}")
    rng = random.Random(seed)
    for attempt in range(tries):
        perm = list(range(a))
        if attempt:
            rng.shuffle(perm)
        demand = {p: 1 for p in combinations(range(a), 2)}
        for u, v in _covering_excess(a):
            demand[tuple(sorted((perm[u], perm[v])))] += 1
        # one column per unit of pair demand, so repeated pairs get distinct slots
        columns = [(p, k) for p, d in demand.items() for k in range(d)]
        columns += [("orbit", i) for i in range(n_orbits)] + [("spare", i) for i in range(spare)]
        rows = {}
        for t, o in orbit_of.items():
            ps = list(combinations(t, 2))
            for slots in product(*[range(demand[p]) for p in ps]):
                cells = list(zip(ps, slots))
                rows[(t, slots, None)] = cells + [("orbit", o)]
                for i in range(spare):
                    rows[(t, slots, i)] = cells + [("spare", i)]
        sol = first(columns, rows, max_nodes=300_000)
        if sol is not None:
            base = [r[0] for r in sol]
            return [BlockSystem.from_blocks(a, 3, [shift(t, k) for t in base]) for k in range(m)]
    raise RuntimeError(f"no orbit covering family for a={a}")


def disjoint_coverings(a: int, count: int) -> list[BlockSystem]:
    """``count`` pairwise disjoint optimal coverings found by nested search."""
    rng = random.Random(7)
    excesses = [_covering_excess(a)] + [_random_excess(a, rng) for _ in range(30)]

    def extend(chosen, used):
        if len(chosen) == count:
            return chosen
        for excess in excesses:
            demand = covering_demand(a, excess)
            for sol in triangle_systems(a, demand, allowed=lambda t: t not in used, max_nodes=50_000):
                got = extend(chosen + [BlockSystem.from_blocks(a, 3, sol)], used | set(sol))
                if got:
                    return got
                break
        return None

    got = extend([], frozenset())
    if not got:
        raise RuntimeError(f"no {count} disjoint coverings for a={a}")
    return got


@lru_cache(maxsize=None)
def six_t_family(a: int = 12) -> list[BlockSystem]:
    """a-3 disjoint optimal coverings missing exactly the aligned triples, plus
    an STS(a+1) containing the aligned triples.

    Searched on labels where the aligned triples are {0,3,6}, {1,4,7}, {2,5,8}
    and {9,10,11}: the coverings form one orbit of x -> x+1 (mod 9) combined
    with the 3-cycle (9 10 11). The result is relabeled so the aligned triples
    become {0,1,2}, {3,4,5}, ...
    """
    assert a == 12
    m = 9

    def sigma(x, k):
        return (x + k) % m if x < m else m + (x - m + k) % 3

    def shift(t, k):
        return tuple(sorted(sigma(x, k) for x in t))

    aligned = {(0, 3, 6), (1, 4, 7), (2, 5, 8), (9, 10, 11)}
    orbit_of, n_orbits = {}, 0
    for t in combinations(range(a), 3):
        if t in aligned or t in orbit_of:
            continue
        for k in range(m):
            orbit_of[shift(t, k)] = n_orbits
        n_orbits += 1
    # Row (t, d) uses triple t as the second cover of its pair d; the
    # ("matched", x) columns force the doubled pairs to be a perfect matching.
    columns = list(combinations(range(a), 2)) + [("matched", x) for x in range(a)]
    columns += [("orbit", i) for i in range(n_orbits)]
    rows = {}
    for t, o in orbit_of.items():
        ps = list(combinations(t, 2))
        rows[(t, None)] = ps + [("orbit", o)]
        for d in ps:
            rows[(t, d)] = [p for p in ps if p != d] + [("matched", d[0]), ("matched", d[1]),
                                                         ("orbit", o)]
    sol = first(columns, rows, max_nodes=5_000_000)
    if sol is None:
        raise RuntimeError("no 6t family found")
    base = [t for t, _ in sol]
    coverings = [[shift(t, k) for t in base] for k in range(m)]
    relabel = {0: 0, 3: 1, 6: 2, 1: 3, 4: 4, 7: 5, 2: 6, 5: 7, 8: 8, 9: 9, 10: 10, 11: 11}
    coverings = [BlockSystem.from_blocks(a, 3, c).relabel(relabel) for c in coverings]
    new_aligned = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(a // 3)]
    sts = sts_containing(a + 1, new_aligned)
    return coverings + [sts]


def sts_containing(v: int, blocks) -> BlockSystem:
    demand = {p: 1 for p in combinations(range(v), 2)}
    for t in blocks:
        for p in combinations(t, 2):
            del demand[p]
    for sol in triangle_systems(v, demand):
        return BlockSystem.from_blocks(v, 3, list(blocks) + sol)
    raise RuntimeError("no STS with the requested blocks")


def resolvable_sqs16() -> list[BlockSystem]:
    """Partition the Boolean SQS(16) into 7 S(2,4,16) classes.

    Blocks are cosets of 2-dimensional subspaces of GF(2)^4; cosets of the
    lines of a spread form an S(2,4,16), so a packing of PG(3,2) into spreads
    is a 2-resolution.
    """
    sqs = _boolean_sqs(16)
    lines = sorted({frozenset({0, b[1] ^ b[0], b[2] ^ b[0], b[3] ^ b[0]}) for b in sqs.blocks},
                   key=sorted)
    line_id = {l: i for i, l in enumerate(lines)}
    spreads = {}
    for combo in combinations(range(len(lines)), 5):
        pts = [x for i in combo for x in lines[i] if x]
        if len(pts) == 15 and len(set(pts)) == 15:
            spreads[combo] = list(combo)
    sol = first(list(range(len(lines))), spreads)
    classes = []
    for spread in sol:
        blocks = [b for b in sqs.blocks
                  if line_id[frozenset({0, b[1] ^ b[0], b[2] ^ b[0], b[3] ^ b[0]})] in spread]
        classes.append(BlockSystem.from_blocks(16, 4, blocks))
    return classes


def min_weight_family_4() -> list[BlockSystem]:
    return [BlockSystem.from_blocks(4, 3, [(0, 1, 2), (0, 1, 3)]),
            BlockSystem.from_blocks(4, 3, [(0, 2, 3), (1, 2, 3)]),
            BlockSystem.from_blocks(4, 3, [(0, 1, 2), (0, 1, 3)])]


def _family(kind, params, systems, member_kind) -> fileformat.Family:
    rec = make_record(kind, params, systems)
    members = tuple(fileformat.Design(member_kind, s) for s in rec.payload)
    return fileformat.Family(kind, members, dict(params), "generated")


def builders():
    def cov(a):
        return lambda: _family("CoveringFamily", {"a": a, "count": mu_value(a)},
                               greedy_covering_family(a, mu_value(a)), "covering")

    def orbit(a, m):
        return lambda: _family("CoveringFamily", {"a": a, "count": m},
                               orbit_covering_family(a, m), "covering")

    def lts(v):
        return lambda: _family("LargeSetSTS", {"n": v}, large_set_sts(v), "sts")

    def sixt():
        fam = six_t_family(12)
        return _family("SixTFamily", {"a": 12}, fam, "triples")

    def lam12():
        fam = six_t_family(12)[:9]
        return _family("DisjointCoveringFamily", {"a": 12, "count": 9}, fam, "covering")

    def mu12():
        fam = six_t_family(12)[:9]
        extra = search_covering(12, forced=[(0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)])
        return _family("CoveringFamily", {"a": 12, "count": 10}, fam + [extra], "covering")

    def s35():
        return _family("SteinerS35", {"n": 5}, [BlockSystem(5, 5, ((0, 1, 2, 3, 4),))], "s35")

    return {
        "sqs10": sqs10,
        "lts9": lts(9),
        "lts13": lts(13),
        "lts15": lts(15),
        "mu4": cov(4),
        "mu5": cov(5),
        "mu6": cov(6),
        "mu7": lambda: _family("CoveringFamily", {"a": 7, "count": 6}, covering_family_7(), "sts"),
        "mu8": cov(8),
        "mu10": orbit(10, 8),
        "mu11": orbit(11, 9),
        "mu12": mu12,
        "lambda6": lambda: _family("DisjointCoveringFamily", {"a": 6, "count": 3},
                                   disjoint_coverings(6, 3), "covering"),
        "lambda12": lam12,
        "sixt12": sixt,
        "rsqs16": lambda: _family("ResolvableSQS", {"n": 16}, resolvable_sqs16(), "s2416"),
        "s35_5": s35,
        "minweight4": lambda: _family("MinWeightFamily", {"a": 4, "count": 3},
                                      min_weight_family_4(), "triples"),
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", nargs="*", help="names to regenerate (default: all)")
    p.add_argument("--out", type=Path, default=DATA)
    args = p.parse_args(argv)
    table = builders()
    names = args.only or list(table)
    args.out.mkdir(parents=True, exist_ok=True)
    for name in names:
        t0 = time.time()
        obj = table[name]()
        fileformat.write(args.out / f"{name}.design", obj, "text")
        print(f"{name}: {time.time() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
