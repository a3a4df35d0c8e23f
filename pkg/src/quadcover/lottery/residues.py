"""Closed-form lottery bounds by residue class and the f-value tables behind them."""
from __future__ import annotations

from dataclasses import dataclass

from quadcover.errors import DomainError
from quadcover.lottery.assembly import partition_search


def _poly(coeffs: tuple[int, ...], x: int) -> int:
    v = 0
    for c in coeffs:
        v = v * x + c
    return v


@dataclass(frozen=True)
class TableRow:
    """f(m*k + a0, m*k + b0) as a cubic in k (k = t with m = 6, or s with m = 12)."""

    a0: int
    b0: int
    step: int
    coeffs: tuple[int, int, int, int]
    exact: bool = True
    min_index: int = 0

    @property
    def var(self) -> str:
        return "t" if self.step == 6 else "s"

    @property
    def name(self) -> str:
        def term(off: int) -> str:
            if off == 0:
                return f"{self.step}{self.var}"
            return f"{self.step}{self.var}{off:+d}"
        return f"f({term(self.a0)},{term(self.b0)})"

    def params(self, k: int) -> tuple[int, int]:
        return self.step * k + self.a0, self.step * k + self.b0

    def value(self, k: int) -> int:
        if k < self.min_index:
            raise DomainError(f"{self.name} needs {self.var} >= {self.min_index}, got {k}")
        return _poly(self.coeffs, k)


_ROWS = [
    TableRow(-1, 1, 6, (36, -12, 3, 1), min_index=1),
    TableRow(1, -1, 6, (36, 0, -1, 0), min_index=2),
    TableRow(1, 0, 6, (36, 6, 0, 0)),
    TableRow(1, 1, 6, (36, 12, 1, 0)),
    TableRow(1, 3, 6, (36, 24, 3, 0)),
    TableRow(3, 1, 6, (36, 36, 11, 1)),
    TableRow(3, 2, 6, (36, 42, 16, 2)),
    TableRow(3, 3, 6, (36, 48, 21, 3)),
    TableRow(3, 4, 6, (36, 54, 26, 4)),
    TableRow(3, 5, 6, (36, 60, 31, 5)),
    TableRow(3, 6, 6, (36, 66, 36, 6)),
    TableRow(3, 7, 6, (36, 72, 41, 7)),
    TableRow(5, 3, 6, (36, 72, 51, 12)),
    TableRow(5, 5, 6, (36, 84, 69, 20)),
    TableRow(5, 6, 6, (36, 90, 78, 24)),
    TableRow(5, 7, 6, (36, 96, 87, 28)),
    # f(7,5) = 35 fails, so the row starts at t = 1
    TableRow(7, 5, 6, (36, 108, 107, 35), min_index=1),
    TableRow(7, 6, 6, (36, 114, 120, 42)),
    TableRow(0, 1, 12, (288, 18, -2, 0), exact=False, min_index=2),
    TableRow(0, 3, 12, (288, 66, -4, 0), exact=False, min_index=2),
    TableRow(4, 3, 12, (288, 258, 76, 8), exact=False),
    TableRow(4, 5, 12, (288, 306, 106, 13), exact=False),
    TableRow(4, 7, 12, (288, 354, 136, 18), exact=False),
    TableRow(2, 3, 12, (288, 156, 28, 2)),
    TableRow(6, 7, 12, (288, 444, 228, 39)),
    TableRow(6, 9, 12, (288, 492, 274, 50)),
    # the 2,4 mod 6 recipe excludes a = 8
    TableRow(8, 7, 12, (288, 552, 354, 75), exact=False, min_index=1),
    TableRow(10, 9, 12, (288, 696, 562, 151), exact=False),
    TableRow(8, 9, 12, (288, 600, 414, 95), exact=False),
    TableRow(12, 9, 12, (288, 792, 724, 220), exact=False),
]

TABLE: dict[str, TableRow] = {row.name: row for row in _ROWS}


def polynomial_table(family: str, k: int) -> int:
    """Evaluate a named table row, e.g. ``polynomial_table("f(6t+3,6t+2)", 1) == 96``."""
    row = TABLE.get(family.replace(" ", ""))
    if row is None:
        raise DomainError(f"unknown table row {family!r}")
    return row.value(k)


@dataclass(frozen=True)
class Residue:
    """L(n) <= (c3 n^3 + c2 n^2 + c1 n + c0)/216 for n = residue mod modulus, n > above."""

    modulus: int
    residue: int
    coeffs: tuple[int, int, int, int]
    offsets: tuple[int, int, int]
    above: int = 0

    @property
    def label(self) -> str:
        return f"{self.residue} mod {self.modulus}"

    def admissible(self, n: int) -> bool:
        return n % self.modulus == self.residue and n > self.above and n >= 4

    def numerator(self, n: int) -> int:
        return _poly(self.coeffs, n)

    def value(self, n: int) -> int:
        num = self.numerator(n)
        if num % 216:
            raise AssertionError(f"{self.label} formula is not integral at n={n}")
        return num // 216

    def parts(self, n: int) -> tuple[int, int, int]:
        k = (n - self.residue) // self.modulus
        step = self.modulus // 3
        return tuple(step * k + o for o in self.offsets)


RESIDUES: tuple[Residue, ...] = (
    Residue(18, 1, (4, -12, 48, 176), (1, 1, -1), above=19),
    Residue(18, 3, (4, -12, 0, 0), (1, 1, 1)),
    Residue(18, 5, (4, -12, 0, 16), (3, 1, 1)),
    Residue(18, 7, (4, -12, 0, 80), (3, 3, 1)),
    Residue(18, 9, (4, -12, 0, 0), (3, 3, 3)),
    Residue(18, 11, (4, -12, 48, -80), (5, 3, 3)),
    Residue(18, 13, (4, -12, 96, -16), (5, 5, 3)),
    Residue(18, 15, (4, -12, 48, 144), (7, 5, 3), above=15),
    Residue(18, 17, (4, -12, 96, 112), (7, 5, 5), above=17),
    Residue(36, 0, (4, -9, 48, 0), (1, -1, 0), above=36),
    Residue(36, 2, (4, -9, -12, 28), (1, 1, 0), above=38),
    Residue(36, 4, (4, -9, -12, 152), (3, 1, 0), above=40),
    Residue(36, 6, (4, -10, 12, 72), (3, 1, 2)),
    Residue(36, 8, (4, -10, 4, 72), (3, 3, 2)),
    Residue(36, 10, (4, -9, 0, 140), (3, 3, 4)),
    Residue(36, 12, (4, -9, 36, 216), (3, 5, 4)),
    Residue(36, 14, (4, -9, 84, 196), (5, 5, 4)),
    Residue(36, 16, (4, -9, 36, 248), (7, 5, 4), above=16),
    Residue(36, 18, (4, -10, 60, 0), (7, 5, 6), above=18),
    Residue(36, 20, (4, -10, 4, 0), (7, 7, 6)),
    Residue(36, 22, (4, -10, 8, 88), (9, 7, 6)),
    Residue(36, 24, (4, -8, 0, -144), (7, 9, 8), above=24),
    Residue(36, 26, (4, -8, -16, 104), (9, 9, 8)),
    Residue(36, 28, (4, -8, 16, -120), (9, 9, 10)),
    Residue(36, 30, (4, -8, 36, 72), (9, 9, 12)),
    Residue(36, 32, (4, -8, 68, 224), (9, 11, 12)),
    Residue(36, 34, (4, -8, 4, 504), (9, 13, 12)),
)


def residue_for(n: int) -> Residue:
    """The residue class of n: odd n mod 18, even n mod 36."""
    mod = 18 if n % 2 else 36
    for r in RESIDUES:
        if r.modulus == mod and n % mod == r.residue:
            return r
    raise AssertionError(f"no residue class for n={n}")


@dataclass(frozen=True)
class LotteryBound:
    n: int
    value: int
    provenance: str
    residue: str
    partition: tuple[int, int, int]

    @property
    def fallback(self) -> bool:
        return self.provenance.startswith("partition")


def bound_L(n: int) -> LotteryBound:
    """Upper bound on L(n) = L(n,4,3,4).

    Uses the residue-class closed form when n satisfies its side condition,
    otherwise the best ordered partition found with established f-values.
    """
    if n < 4:
        raise DomainError(f"bound_L needs n >= 4, got {n}")
    res = residue_for(n)
    if res.admissible(n):
        return LotteryBound(n, res.value(n), f"residue {res.label}", res.label, res.parts(n))
    plan = partition_search(n, "theory", 3 if n >= 9 else 0)
    return LotteryBound(n, plan.predicted, f"partition {plan.describe()}",
                        res.label, plan.parts)
