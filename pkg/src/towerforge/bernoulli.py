"""Exact Bernoulli numbers and the regular-prime test.

Convention B_1 = -1/2, as forced by the defining recurrence
sum_{j=0}^{k} C(k+1, j) B_j = 0. Regularity is decided by Kummer's criterion:
p is regular iff p divides the numerator of none of B_2, B_4, ..., B_{p-3}.
Numerators are read off reduced fractions, which is safe because von
Staudt-Clausen keeps p out of the denominators in that range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arith import is_prime

_table: list[Fraction] = [Fraction(1)]


def _extend(k: int) -> None:
    while len(_table) <= k:
        j = len(_table)
        acc = Fraction(0)
        for i, b in enumerate(_table):
            if b:
                acc += comb(j + 1, i) * b
        _table.append(-acc / (j + 1))


def bernoulli(k: int) -> Fraction:
    """Exact B_k; memoized, computed by the defining recurrence."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _extend(k)
    return _table[k]


@dataclass(frozen=True)
class BernoulliTable:
    """Immutable snapshot B_0..B_max_index."""

    max_index: int
    values: tuple[Fraction, ...]

    @classmethod
    def up_to(cls, max_index: int) -> "BernoulliTable":
        _extend(max_index)
        return cls(max_index, tuple(_table[: max_index + 1]))


def is_regular_prime(p: int) -> bool:
    """Kummer's criterion; p = 2 and 3 are regular vacuously (empty index range)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _extend(max(p - 3, 0))
    return all(_table[k].numerator % p != 0 for k in range(2, p - 2, 2))
