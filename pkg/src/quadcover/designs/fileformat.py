"""Reading and writing design files.

Text form::

    design <kind> r=<r> n=<n> [a=<a> b=<b> ...] k=<number of blocks>
    0 1 2 3
    0 1 4 5
    ...

Blocks are ascending integers, one block per line, blocks in lexicographic
order, LF line endings. A family file is a ``family <kind> ...`` header
followed by one design section per member. The JSON form is a single object
with keys ``kind``, ``r``, ``n``, ``blocks`` and ``provenance`` (plus any
extra integer fields); families use ``members``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from quadcover.designs.system import BlockSystem
from quadcover.errors import ShapeError

# Header fields that are part of the shape; everything else is an extra field.
_SHAPE_KEYS = ("r", "n", "k")


@dataclass(frozen=True)
class Design:
    kind: str
    system: BlockSystem
    fields: Mapping[str, int] = field(default_factory=dict)
    provenance: str = "generated"


@dataclass(frozen=True)
class Family:
    kind: str
    members: tuple[Design, ...]
    parameters: Mapping[str, int] = field(default_factory=dict)
    provenance: str = "generated"


def _fmt_fields(fields: Mapping[str, int]) -> str:
    return " ".join(f"{k}={int(v)}" for k, v in fields.items())


def design_to_text(d: Design) -> str:
    s = d.system
    head = f"design {d.kind} r={s.r} n={s.n}"
    extra = _fmt_fields(d.fields)
    if extra:
        head += " " + extra
    head += f" k={len(s)}"
    lines = [head] + [" ".join(map(str, b)) for b in s.blocks]
    return "\n".join(lines) + "\n"


def family_to_text(f: Family) -> str:
    head = f"family {f.kind}"
    extra = _fmt_fields(f.parameters)
    if extra:
        head += " " + extra
    head += f" members={len(f.members)} provenance={f.provenance}\n"
    return head + "".join(design_to_text(m) for m in f.members)


def _parse_kv(tokens: list[str], where: str) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, eq, val = tok.partition("=")
        if not eq or not key:
            raise ShapeError(f"{where}: expected key=value, got {tok!r}")
        out[key] = val
    return out


def _int(val: str, key: str, where: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise ShapeError(f"{where}: field {key} is not an integer: {val!r}") from None


def _parse_sections(text: str) -> tuple[list[str] | None, list[tuple[list[str], list[str], int]]]:
    lines = text.replace("\r\n", "\n").split("\n")
    family_head = None
    sections: list[tuple[list[str], list[str], int]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "family":
            if family_head is not None or sections:
                raise ShapeError(f"line {lineno}: family header must come first")
            family_head = tokens[1:]
        elif tokens[0] == "design":
            sections.append((tokens[1:], [], lineno))
        else:
            if not sections:
                raise ShapeError(f"line {lineno}: block before any design header")
            sections[-1][1].append(line)
    return family_head, sections


def _build_design(head: list[str], body: list[str], lineno: int, provenance: str) -> Design:
    where = f"line {lineno}"
    if not head:
        raise ShapeError(f"{where}: design header lacks a kind")
    kind = head[0]
    kv = _parse_kv(head[1:], where)
    for key in ("r", "n"):
        if key not in kv:
            raise ShapeError(f"{where}: design header lacks {key}=")
    r, n = _int(kv["r"], "r", where), _int(kv["n"], "n", where)
    blocks = []
    for i, line in enumerate(body):
        try:
            blocks.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ShapeError(f"{where}: bad block line {line!r}") from None
    if "k" in kv and _int(kv["k"], "k", where) != len(blocks):
        raise ShapeError(f"{where}: header says k={kv['k']} but {len(blocks)} blocks follow")
    prov = kv.pop("provenance", provenance)
    extra = {k: _int(v, k, where) for k, v in kv.items() if k not in _SHAPE_KEYS}
    multiset = len(set(blocks)) != len(blocks) and kind in ("ab_system", "lottery", "r_system")
    return Design(kind, BlockSystem.from_blocks(n, r, blocks, multiset=multiset), extra, prov)


def parse_text(text: str) -> Design | Family:
    family_head, sections = _parse_sections(text)
    if family_head is None:
        if len(sections) != 1:
            raise ShapeError(f"expected one design section, found {len(sections)}")
        return _build_design(*sections[0], provenance="user-supplied")
    if not family_head:
        raise ShapeError("family header lacks a kind")
    kind = family_head[0]
    kv = _parse_kv(family_head[1:], "family header")
    prov = kv.pop("provenance", "user-supplied")
    declared = kv.pop("members", None)
    members = tuple(_build_design(*sec, provenance=prov) for sec in sections)
    if declared is not None and _int(declared, "members", "family header") != len(members):
        raise ShapeError(f"family header says members={declared} but {len(members)} follow")
    params = {k: _int(v, k, "family header") for k, v in kv.items()}
    return Family(kind, members, params, prov)


def design_to_json(d: Design) -> dict:
    obj = {"kind": d.kind, "r": d.system.r, "n": d.system.n}
    obj.update({k: int(v) for k, v in d.fields.items()})
    obj["blocks"] = [list(b) for b in d.system.blocks]
    obj["provenance"] = d.provenance
    return obj


def family_to_json(f: Family) -> dict:
    return {"kind": f.kind, "parameters": dict(f.parameters), "provenance": f.provenance,
            "members": [design_to_json(m) for m in f.members]}


def _design_from_obj(obj: Mapping, provenance: str) -> Design:
    try:
        kind, r, n, blocks = obj["kind"], int(obj["r"]), int(obj["n"]), obj["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"design object missing or bad field: {exc}") from None
    extra = {k: int(v) for k, v in obj.items()
             if k not in ("kind", "r", "n", "k", "blocks", "provenance")}
    tuples = [tuple(int(x) for x in b) for b in blocks]
    multiset = len(set(tuples)) != len(tuples) and kind in ("ab_system", "lottery", "r_system")
    return Design(kind, BlockSystem.from_blocks(n, r, tuples, multiset=multiset), extra,
                  obj.get("provenance", provenance))


def parse_json(text: str) -> Design | Family:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ShapeError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ShapeError("design JSON must be an object")
    if "members" in obj:
        prov = obj.get("provenance", "user-supplied")
        members = tuple(_design_from_obj(m, prov) for m in obj["members"])
        params = {k: int(v) for k, v in obj.get("parameters", {}).items()}
        return Family(obj.get("kind", ""), members, params, prov)
    return _design_from_obj(obj, "user-supplied")


def parse(text: str) -> Design | Family:
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def dumps(obj: Design | Family, fmt: str = "text") -> str:
    if fmt == "json":
        data = family_to_json(obj) if isinstance(obj, Family) else design_to_json(obj)
        return json.dumps(data, sort_keys=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return family_to_text(obj) if isinstance(obj, Family) else design_to_text(obj)


def read(path: str | Path) -> Design | Family:
    return parse(Path(path).read_text())


def write(path: str | Path, obj: Design | Family, fmt: str | None = None) -> None:
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "text"
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(obj, fmt))
