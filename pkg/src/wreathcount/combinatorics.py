"""Exact counting helpers: partitions, Stirling numbers, compositions.

Every function here returns unbounded Python ints; no floats enter any
counting path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .budgets import DEFAULT, Budgets
from .errors import BudgetExceeded


@dataclass(frozen=True)
class Partition:
    """Integer partition as a weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out


@lru_cache(maxsize=None)
def _partition_table(n: int) -> tuple[int, ...]:
    # classic coin-style DP: p[s] = number of partitions of s with parts <= current
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for s in range(part, n + 1):
            table[s] += table[s - part]
    return tuple(table)


def partition_count(n: int) -> int:
    """p(n), the number of integer partitions of n; p(0) = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partition_table(n)[n]


def partition_enum(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order: (n) first, (1,...,1) last."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return [Partition(parts) for parts in rec(n, n)]


@lru_cache(maxsize=None)
def _stirling_row(m: int) -> tuple[int, ...]:
    # row m of the unsigned first-kind triangle, indexed by cycle count j
    if m == 0:
        return (1,)
    prev = _stirling_row(m - 1)
    row = [0] * (m + 1)
    for j in range(1, m + 1):
        row[j] = (prev[j - 1] if j - 1 < len(prev) else 0) \
            + (m - 1) * (prev[j] if j < len(prev) else 0)
    return tuple(row)


def stirling_first(j: int, m: int) -> int:
    """Unsigned Stirling number of the first kind: permutations of m points with j cycles."""
    if m < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if j > m:
        return 0
    return _stirling_row(m)[j]


def weak_composition_count(n: int, k: int) -> int:
    """Number of k-tuples of nonnegative integers summing to n: C(n+k-1, k-1)."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return math.comb(n + k - 1, k - 1)


def fix_subsets_formula(cycle_type: Mapping[int, int], ell: int,
                        budgets: Budgets = DEFAULT) -> int:
    """Number of ell-subsets fixed setwise by a permutation with the given cycle type.

    ``cycle_type`` maps cycle length to multiplicity (fixed points as length
    1). A fixed subset is a union of whole cycles, so the count is the sum
    over partitions of ell into available cycle lengths of the product of
    binomial choices per length; evaluated as a DP over the lengths.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell > budgets.max_partition_size:
        raise BudgetExceeded(
            f"fixed-subset formula refused: ell {ell} > {budgets.max_partition_size}")
    alpha = dict(getattr(cycle_type, "alpha", cycle_type))
    lengths = sorted(alpha)

    @lru_cache(maxsize=None)
    def ways(idx: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        if idx == len(lengths):
            return 0
        length = lengths[idx]
        avail = alpha[length]
        total = 0
        for take in range(0, min(avail, remaining // length) + 1):
            total += math.comb(avail, take) * ways(idx + 1, remaining - take * length)
        return total

    result = ways(0, ell)
    ways.cache_clear()
    return result


def tuples_of_partitions_count(k: int, n: int) -> int:
    """Number of k-tuples of partitions with total size n.

    Convolution power of the partition counting sequence: sum over weak
    k-compositions (x_1, ..., x_k) of n of p(x_1) * ... * p(x_k).
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    p = _partition_table(n)
    acc = list(p)
    for _ in range(k - 1):
        acc = [sum(acc[i] * p[s - i] for i in range(s + 1)) for s in range(n + 1)]
    return acc[n]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
