"""Knuth's Algorithm X over dict-of-sets.

Used offline to (re)generate bundled designs and at runtime for a few small
completions. Rows and columns are explored in sorted order so the first
solution is reproducible.
"""
from __future__ import annotations

from typing import Hashable, Iterator, Mapping, Sequence


def solve(columns: Sequence[Hashable], rows: Mapping[Hashable, Sequence[Hashable]],
          secondary: Sequence[Hashable] = (), limit: int | None = None,
          max_nodes: int | None = None) -> Iterator[list[Hashable]]:
    """Yield exact covers of ``columns`` by ``rows``.

    ``secondary`` columns may be covered at most once. Column choice uses the
    minimum-remaining-values rule with ties broken by column order.
    """
    order = {c: i for i, c in enumerate(list(columns) + list(secondary))}
    primary = set(columns)
    X: dict[Hashable, set] = {c: set() for c in order}
    for name, cols in rows.items():
        for c in cols:
            X[c].add(name)
    row_key = {name: i for i, name in enumerate(sorted(rows, key=repr))}
    nodes = [0]
    found = [0]

    def select(r):
        removed = []
        for j in rows[r]:
            for i in X[j]:
                for k in rows[i]:
                    if k != j:
                        X[k].discard(i)
            removed.append(X.pop(j))
        return removed

    def deselect(r, removed):
        for j in reversed(rows[r]):
            X[j] = removed.pop()
            for i in X[j]:
                for k in rows[i]:
                    if k != j:
                        X[k].add(i)

    partial: list[Hashable] = []

    def search():
        live = [c for c in X if c in primary]
        if not live:
            found[0] += 1
            yield list(partial)
            return
        nodes[0] += 1
        if max_nodes is not None and nodes[0] > max_nodes:
            return
        c = min(live, key=lambda col: (len(X[col]), order[col]))
        for r in sorted(X[c], key=row_key.__getitem__):
            partial.append(r)
            removed = select(r)
            yield from search()
            deselect(r, removed)
            partial.pop()
            if limit is not None and found[0] >= limit:
                return

    yield from search()


def first(columns, rows, secondary=(), max_nodes: int | None = None):
    for sol in solve(columns, rows, secondary, limit=1, max_nodes=max_nodes):
        return sol
    return None
