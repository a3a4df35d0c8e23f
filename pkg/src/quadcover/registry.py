"""On-disk ingredient registry: a directory of design files plus ``index.json``.

Every file is stored under its content digest. An entry is marked verified
only by a verification run, and each run is appended to ``registry.log``.
"""
from __future__ import annotations

import hashlib
import json
import shutil
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

from quadcover.designs import fileformat
from quadcover.designs.ingredients import IngredientRecord, load_family
from quadcover.errors import InvalidIngredient, QuadcoverError

INDEX = "index.json"
LOG = "registry.log"


def digest_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass
class RegistryEntry:
    path: str
    kind: str
    parameters: dict = field(default_factory=dict)
    digest: str = ""
    verified: bool = False
    provenance: str = "user-supplied"


class Registry:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    @property
    def index_path(self) -> Path:
        return self.root / INDEX

    def entries(self) -> list[RegistryEntry]:
        if not self.index_path.exists():
            return []
        data = json.loads(self.index_path.read_text())
        return [RegistryEntry(**e) for e in data.get("entries", [])]

    def _save(self, entries: list[RegistryEntry]) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        body = {"entries": [asdict(e) for e in entries]}
        self.index_path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")

    def _log(self, line: str) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        with open(self.root / LOG, "a") as fh:
            fh.write(f"{stamp} {line}\n")

    def _check(self, entry: RegistryEntry) -> IngredientRecord:
        path = self.root / entry.path
        if not path.exists():
            raise InvalidIngredient(f"{entry.path}: file missing")
        if digest_of(path) != entry.digest:
            raise InvalidIngredient(f"{entry.path}: digest mismatch")
        return load_family(entry.kind, entry.parameters, path)

    def add(self, source: str | Path, kind: str, parameters: Mapping[str, int] | None = None) -> RegistryEntry:
        """Copy ``source`` in, verify it, and index it. Raises InvalidIngredient when it fails."""
        src = Path(source)
        rec = load_family(kind, parameters, src)
        self.root.mkdir(parents=True, exist_ok=True)
        digest = digest_of(src)
        name = f"{kind}-{digest[:16]}.design"
        shutil.copyfile(src, self.root / name)
        entry = RegistryEntry(name, kind, {k: int(v) for k, v in rec.parameters.items()},
                              digest, True, rec.provenance)
        entries = [e for e in self.entries() if e.path != name] + [entry]
        self._save(entries)
        self._log(f"add {name} kind={kind} verified=yes")
        return entry

    def verify(self) -> list[tuple[RegistryEntry, str | None]]:
        """Re-verify every entry; returns (entry, problem or None) and updates the flags."""
        out, entries = [], self.entries()
        for e in entries:
            try:
                self._check(e)
                problem = None
            except QuadcoverError as exc:
                problem = str(exc)
            e.verified = problem is None
            self._log(f"verify {e.path} verified={'yes' if e.verified else 'no'}")
            out.append((e, problem))
        if entries:
            self._save(entries)
        return out

    def records(self) -> Iterator[IngredientRecord]:
        """Verified entries whose file still matches its digest, re-verified on load."""
        for e in self.entries():
            if not e.verified:
                continue
            try:
                yield self._check(e)
            except QuadcoverError:
                continue


def read_design(path: str | Path) -> fileformat.Design:
    obj = fileformat.read(path)
    if not isinstance(obj, fileformat.Design):
        raise InvalidIngredient(f"{path} holds a family, expected a single design")
    return obj
