"""Verified base designs used by the constructions.

Every ingredient, bundled or user-supplied, is re-verified when loaded; a
record's ``verified`` flag is only ever set by :func:`verify_payload` passing.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from quadcover.designs import fileformat
from quadcover.designs.numbers import c_star, covering_number, mu_value, packing_number
from quadcover.designs.system import BlockSystem, weight_of
from quadcover.designs.verify import (check_covering, check_disjoint, check_packing,
                                      check_sqs, check_steiner, check_sts,
                                      check_union_covers_all)
from quadcover.errors import InvalidIngredient, MissingIngredient, ShapeError

KINDS = (
    "STS", "SQS", "OptimalCovering", "OptimalPacking", "PackingWithLeave",
    "LargeSetSTS", "DisjointCoveringFamily", "CoveringFamily", "SixTFamily",
    "SteinerS35", "ResolvableSQS", "MinWeightFamily",
)

REGISTRY_ENV = "QUADCOVER_REGISTRY"


@dataclass(frozen=True)
class IngredientRecord:
    kind: str
    parameters: Mapping[str, int]
    payload: tuple[BlockSystem, ...]
    provenance: str = "generated"
    verified: bool = False
    name: str = ""

    @property
    def system(self) -> BlockSystem:
        if len(self.payload) != 1:
            raise ShapeError(f"{self.kind} record holds {len(self.payload)} systems")
        return self.payload[0]


def _need(params: Mapping, key: str) -> int:
    if key not in params:
        raise InvalidIngredient(f"missing parameter {key}")
    return int(params[key])


def _same_ground(systems: Sequence[BlockSystem], n: int, r: int) -> str | None:
    for i, s in enumerate(systems):
        if s.n != n or s.r != r:
            return f"member {i} has n={s.n} r={s.r}, expected n={n} r={r}"
    return None


def _members_are(systems, check, label) -> str | None:
    for i, s in enumerate(systems):
        problem = check(s)
        if problem:
            return f"member {i} is not {label}: {problem}"
    return None


def _optimal_covering(s: BlockSystem) -> str | None:
    problem = check_covering(s)
    if problem:
        return problem
    if len(s) != covering_number(s.n):
        return f"{len(s)} triples, optimal is {covering_number(s.n)}"
    return None


def _verify_six_t(params, systems) -> str | None:
    a = _need(params, "a")
    if a % 6 or a < 12:
        return f"a={a} must be a multiple of 6 and at least 12"
    if len(systems) != a - 2:
        return f"expected {a - 3} coverings plus one STS, got {len(systems)} systems"
    covers, sts = systems[:-1], systems[-1]
    problem = (_same_ground(covers, a, 3) or _members_are(covers, _optimal_covering, "an optimal covering"))
    if problem:
        return problem
    aligned = {(3 * i, 3 * i + 1, 3 * i + 2) for i in range(a // 3)}
    have = {b for s in covers for b in s.blocks}
    for t in combinations(range(a), 3):
        if t in aligned and t in have:
            return f"aligned triple {t} appears in a covering"
        if t not in aligned and t not in have:
            return f"triple {t} is in no covering"
    if sts.n != a + 1 or sts.r != 3:
        return f"last member must be a triple system on {a + 1} points"
    problem = check_sts(sts)
    if problem:
        return f"last member is not an STS: {problem}"
    missing = sorted(aligned - set(sts.blocks))
    if missing:
        return f"STS lacks aligned triple {missing[0]} as a block"
    return None


def verify_payload(kind: str, params: Mapping, systems: Sequence[BlockSystem]) -> str | None:
    """First violated condition for ``kind``, or None when the payload is valid."""
    if kind not in KINDS:
        return f"unknown ingredient kind {kind!r}"
    if not systems:
        return "empty payload"
    if kind == "STS":
        return _same_ground(systems, _need(params, "n"), 3) or _members_are(systems, check_sts, "an STS")
    if kind == "SQS":
        return _same_ground(systems, _need(params, "n"), 4) or _members_are(systems, check_sqs, "an SQS")
    if kind == "OptimalCovering":
        return _same_ground(systems, _need(params, "a"), 3) or _members_are(
            systems, _optimal_covering, "an optimal covering")
    if kind == "OptimalPacking":
        def ok(s):
            return check_packing(s) or (None if len(s) == packing_number(s.n)
                                        else f"{len(s)} triples, maximum is {packing_number(s.n)}")
        return _same_ground(systems, _need(params, "a"), 3) or _members_are(systems, ok, "a maximum packing")
    if kind == "PackingWithLeave":
        return _same_ground(systems, _need(params, "a"), 3) or _members_are(systems, check_packing, "a packing")
    if kind == "LargeSetSTS":
        n = _need(params, "n")
        if len(systems) != n - 2:
            return f"a large set of STS({n}) has {n - 2} members, got {len(systems)}"
        return (_same_ground(systems, n, 3) or _members_are(systems, check_sts, "an STS")
                or check_disjoint(systems) or check_union_covers_all(systems))
    if kind in ("DisjointCoveringFamily", "CoveringFamily"):
        a = _need(params, "a")
        count = int(params.get("count", len(systems)))
        if len(systems) != count:
            return f"expected {count} members, got {len(systems)}"
        problem = _same_ground(systems, a, 3) or _members_are(systems, _optimal_covering, "an optimal covering")
        if problem:
            return problem
        if kind == "DisjointCoveringFamily":
            return check_disjoint(systems)
        if count < mu_value(a):
            return f"{count} coverings cannot contain all triples (mu={mu_value(a)})"
        return check_union_covers_all(systems)
    if kind == "SixTFamily":
        return _verify_six_t(params, systems)
    if kind == "SteinerS35":
        n = _need(params, "n")
        return _same_ground(systems, n, 5) or _members_are(
            systems, lambda s: check_steiner(s, 3), "an S(3,5,n)")
    if kind == "ResolvableSQS":
        n = _need(params, "n")
        if len(systems) != (n - 2) // 2:
            return f"a 2-resolution of an SQS({n}) has {(n - 2) // 2} classes, got {len(systems)}"
        problem = _same_ground(systems, n, 4) or _members_are(
            systems, lambda s: check_steiner(s, 2), "an S(2,4,n)")
        if problem:
            return problem
        union = BlockSystem(n, 4, tuple(b for s in systems for b in s.blocks), multiset=True)
        return check_steiner(union, 3)
    if kind == "MinWeightFamily":
        a = _need(params, "a")
        problem = _same_ground(systems, a, 3)
        if problem:
            return problem
        for i, s in enumerate(systems):
            if weight_of(s).weight != c_star(a):
                return f"member {i} has weight {weight_of(s).weight}, minimum is {c_star(a)}"
        return check_union_covers_all(systems)
    return None


def make_record(kind: str, params: Mapping, systems: Iterable[BlockSystem],
                provenance: str = "generated", name: str = "") -> IngredientRecord:
    """Verify and wrap a payload; raises InvalidIngredient on the first violation."""
    systems = tuple(systems)
    problem = verify_payload(kind, params, systems)
    if problem:
        raise InvalidIngredient(f"{kind}{dict(params)}: {problem}")
    return IngredientRecord(kind, dict(params), systems, provenance, True, name)


def _family_from_source(source) -> fileformat.Family | fileformat.Design:
    if isinstance(source, (fileformat.Family, fileformat.Design)):
        return source
    path = Path(source)
    if path.exists():
        return fileformat.read(path)
    return fileformat.parse(str(source))


def load_family(kind: str, parameters: Mapping | None = None, source=None) -> IngredientRecord:
    """Load and verify an ingredient from a path, text, or parsed family.

    ``parameters`` default to those recorded in the family header.
    """
    if source is None:
        return lookup(kind, **dict(parameters or {}))
    try:
        parsed = _family_from_source(source)
    except ShapeError as exc:
        raise InvalidIngredient(f"cannot parse ingredient: {exc}") from None
    if isinstance(parsed, fileformat.Design):
        systems, prov, params = (parsed.system,), parsed.provenance, dict(parsed.fields)
        params.setdefault("n", parsed.system.n)
    else:
        systems, prov, params = tuple(m.system for m in parsed.members), parsed.provenance, dict(parsed.parameters)
    if parameters:
        params.update(parameters)
    return make_record(kind, params, systems, prov)


def _data_dir():
    return resources.files("quadcover.designs") / "data"


def bundled_names() -> list[str]:
    return sorted(p.name[:-len(".design")] for p in _data_dir().iterdir()
                  if p.name.endswith(".design"))


@lru_cache(maxsize=None)
def bundled(name: str) -> IngredientRecord:
    """A bundled ingredient by file stem (e.g. ``lts9``), verified on load."""
    path = _data_dir() / f"{name}.design"
    if not path.is_file():
        raise MissingIngredient(f"no bundled ingredient named {name!r}")
    parsed = fileformat.parse(path.read_text())
    if isinstance(parsed, fileformat.Design):
        kind = parsed.kind.upper()
        params = dict(parsed.fields)
        params.setdefault("n", parsed.system.n)
        systems = (parsed.system,)
    else:
        kind, params = parsed.kind, dict(parsed.parameters)
        systems = tuple(m.system for m in parsed.members)
    return make_record(kind, params, systems, "bundled", name)


def bundled_design(name: str) -> BlockSystem:
    return bundled(name).system


def _registry_sources() -> Iterator[IngredientRecord]:
    dirs = os.environ.get(REGISTRY_ENV, "")
    if not dirs:
        return
    from quadcover.registry import Registry

    for d in dirs.split(os.pathsep):
        if d:
            yield from Registry(d).records()


def _matches(rec: IngredientRecord, kind: str, params: Mapping) -> bool:
    return rec.kind == kind and all(int(rec.parameters.get(k, -1)) == int(v) for k, v in params.items())


def available(kind: str, **params) -> bool:
    try:
        lookup(kind, **params)
    except MissingIngredient:
        return False
    return True


@lru_cache(maxsize=None)
def _bundled_headers() -> list[tuple[str, str, dict]]:
    out = []
    for name in bundled_names():
        text = (_data_dir() / f"{name}.design").read_text()
        first = text.split("\n", 1)[0].split()
        if first[0] == "family":
            kv = dict(t.split("=", 1) for t in first[2:])
            kv.pop("provenance", None)
            kv.pop("members", None)
            out.append((name, first[1], {k: int(v) for k, v in kv.items()}))
        else:
            kv = dict(t.split("=", 1) for t in first[2:])
            params = {k: int(v) for k, v in kv.items() if k not in ("r", "k")}
            out.append((name, first[1].upper(), params))
    return out


def lookup(kind: str, **params) -> IngredientRecord:
    """Find a verified ingredient of ``kind`` whose parameters include ``params``.

    Bundled data is searched first, then any registry directories listed in
    the ``QUADCOVER_REGISTRY`` environment variable.
    """
    for name, k, p in _bundled_headers():
        if k == kind and all(p.get(key) == int(v) for key, v in params.items()):
            return bundled(name)
    for rec in _registry_sources():
        if _matches(rec, kind, params):
            return rec
    raise MissingIngredient(f"no {kind} ingredient with {params}")


def large_set(n: int) -> list[BlockSystem]:
    """n-2 pairwise disjoint STS(n) whose union is every triple."""
    if n == 3:
        return [BlockSystem(3, 3, ((0, 1, 2),))]
    return list(lookup("LargeSetSTS", n=n).payload)


def covering_family(a: int) -> list[BlockSystem]:
    """mu(a) optimal coverings whose union contains every triple of an a-set."""
    if a == 3:
        return [BlockSystem(3, 3, ((0, 1, 2),))]
    if a % 6 in (1, 3) and a not in (7,):
        try:
            return large_set(a)
        except MissingIngredient:
            pass
    return list(lookup("CoveringFamily", a=a).payload)


def disjoint_covering_family(a: int) -> list[BlockSystem]:
    return list(lookup("DisjointCoveringFamily", a=a).payload)


def min_weight_family(a: int) -> list[BlockSystem]:
    """a-1 minimum-weight triple systems whose union contains every triple."""
    if a % 6 in (0, 2) and a != 6:
        # punctured members of a large set of STS(a+1)
        return [BlockSystem.from_blocks(a, 3, [b for b in s.blocks if a not in b])
                for s in large_set(a + 1)]
    return list(lookup("MinWeightFamily", a=a).payload)
