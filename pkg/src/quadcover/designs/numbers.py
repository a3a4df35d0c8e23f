"""Closed-form design numbers.

All arithmetic is on integers or :class:`~fractions.Fraction`; nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from quadcover.errors import DomainError, UnsupportedParameters


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def covering_number(a: int) -> int:
    """Minimum number of triples covering every pair of an a-set."""
    if a < 2:
        raise DomainError(f"covering number needs a >= 2, got {a}")
    # ceil((a-1)/2) == a // 2
    return _ceil_div(a * (a // 2), 3)


def packing_number(a: int) -> int:
    """Maximum number of pairwise pair-disjoint triples on an a-set."""
    if a < 3:
        raise DomainError(f"packing number needs a >= 3, got {a}")
    p = (a * ((a - 1) // 2)) // 3
    return p - 1 if a % 6 == 5 else p


def c_star(a: int) -> Fraction:
    """Minimum weight of a triple system on a points."""
    if a < 2:
        raise DomainError(f"minimum weight needs a >= 2, got {a}")
    if a % 2:
        return Fraction(_ceil_div(a * a - a, 6))
    return Fraction(_ceil_div(2 * a * a - a, 6), 2)


def two_c_star(a: int) -> int:
    """``2 * c_star(a)``, always an integer."""
    v = 2 * c_star(a)
    assert v.denominator == 1
    return int(v)


def mu_value(a: int) -> int:
    """Fewest optimal pair coverings of an a-set whose union holds every triple."""
    if a < 3:
        raise UnsupportedParameters(f"mu(a,3) needs a >= 3, got {a}")
    return {6: 5, 7: 6}.get(a, a - 2)


def lambda_value(a: int) -> int:
    """Most pairwise disjoint optimal pair coverings of an a-set (a = 0 mod 6)."""
    if a < 6 or a % 6:
        raise UnsupportedParameters(f"lambda(a,3) is only known here for a = 0 mod 6, got {a}")
    return a - 3


def sts_size(n: int) -> int:
    return n * (n - 1) // 6


def sqs_size(n: int) -> int:
    return n * (n - 1) * (n - 2) // 24


def triples_in(a: int) -> int:
    return comb(a, 3)
