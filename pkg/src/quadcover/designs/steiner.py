"""Steiner triple and quadruple systems.

STS(n): Bose (n = 3 mod 6) and Skolem (n = 1 mod 6) constructions.
SQS(n): Boolean systems on 2^m points, a bundled SQS(10), and the classical
doubling SQS(v) -> SQS(2v) through the cyclic 1-factorization of K_v.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from quadcover.designs.system import BlockSystem
from quadcover.designs.verify import check_sqs, check_sts
from quadcover.errors import UnsupportedParameters


def _bose(n: int) -> list[tuple[int, int, int]]:
    m = n // 3  # order of the idempotent commutative quasigroup, odd
    half = (m + 1) // 2

    def op(i: int, j: int) -> int:
        return ((i + j) * half) % m

    def pt(x: int, level: int) -> int:
        return x + level * m

    blocks = [(pt(i, 0), pt(i, 1), pt(i, 2)) for i in range(m)]
    for i, j in combinations(range(m), 2):
        k = op(i, j)
        for level in range(3):
            blocks.append((pt(i, level), pt(j, level), pt(k, (level + 1) % 3)))
    return blocks


def _skolem(n: int) -> list[tuple[int, int, int]]:
    k = (n - 1) // 6
    m = 2 * k  # order of the half-idempotent commutative quasigroup

    def op(i: int, j: int) -> int:
        v = (i + j) % m
        return v // 2 if v % 2 == 0 else (v - 1) // 2 + k

    inf = 3 * m

    def pt(x: int, level: int) -> int:
        return x + level * m

    blocks = [(pt(i, 0), pt(i, 1), pt(i, 2)) for i in range(k)]
    for i in range(k):
        for level in range(3):
            blocks.append((inf, pt(k + i, level), pt(i, (level + 1) % 3)))
    for i, j in combinations(range(m), 2):
        v = op(i, j)
        for level in range(3):
            blocks.append((pt(i, level), pt(j, level), pt(v, (level + 1) % 3)))
    return blocks


@lru_cache(maxsize=None)
def construct_sts(n: int) -> BlockSystem:
    """Steiner triple system on ``n`` points (n = 1, 3 mod 6)."""
    if n < 3 or n % 6 not in (1, 3):
        raise UnsupportedParameters(f"no Steiner triple system of order {n}")
    blocks = _bose(n) if n % 6 == 3 else _skolem(n)
    system = BlockSystem.from_blocks(n, 3, blocks)
    problem = check_sts(system)
    if problem:
        raise AssertionError(f"STS({n}) construction failed: {problem}")
    return system


def _boolean_sqs(n: int) -> BlockSystem:
    blocks = []
    for x, y, z in combinations(range(n), 3):
        w = x ^ y ^ z
        if w > z:
            blocks.append((x, y, z, w))
    return BlockSystem.from_blocks(n, 4, blocks)


def one_factorization(v: int) -> list[list[tuple[int, int]]]:
    """Cyclic 1-factorization of K_v (v even): v-1 perfect matchings."""
    if v % 2 or v < 2:
        raise UnsupportedParameters(f"K_{v} has no 1-factorization")
    m = v - 1
    inf = m
    factors = []
    for i in range(m):
        f = [tuple(sorted((inf, i)))]
        for j in range(1, (v - 2) // 2 + 1):
            f.append(tuple(sorted(((i - j) % m, (i + j) % m))))
        factors.append(sorted(f))
    return factors


def double_sqs(q: BlockSystem) -> BlockSystem:
    """SQS(2v) from SQS(v): two copies plus cross blocks from a 1-factorization."""
    v = q.n
    blocks = list(q.blocks) + [tuple(x + v for x in b) for b in q.blocks]
    for factor in one_factorization(v):
        for (p, s) in factor:
            for (u, w) in factor:
                blocks.append((p, s, u + v, w + v))
    return BlockSystem.from_blocks(2 * v, 4, blocks)


def _is_power_of_two(n: int) -> bool:
    return n >= 4 and n & (n - 1) == 0


def sqs_supported(n: int) -> bool:
    if n in (1, 2) or _is_power_of_two(n) or n == 10:
        return True
    return n % 2 == 0 and n > 10 and sqs_supported(n // 2)


@lru_cache(maxsize=None)
def construct_sqs(n: int) -> BlockSystem:
    """Steiner quadruple system on ``n`` points from the supported family.

    Orders 1 and 2 give the (vacuous) empty system.
    """
    if not sqs_supported(n):
        raise UnsupportedParameters(f"SQS({n}) is outside the supported family "
                                    "(powers of two, 10, and their doublings)")
    if n in (1, 2):
        return BlockSystem(n, 4, ())
    if _is_power_of_two(n):
        system = _boolean_sqs(n)
    elif n == 10:
        from quadcover.designs.ingredients import bundled_design

        system = bundled_design("sqs10")
    else:
        system = double_sqs(construct_sqs(n // 2))
    problem = check_sqs(system)
    if problem:
        raise AssertionError(f"SQS({n}) construction failed: {problem}")
    return system
