"""Multi-indices of fixed total degree, in dictionary order.

A multi-index is a plain tuple ``(m_0, ..., m_d)`` of non-negative ints.
Monomials ``x^m`` of degree N are ordered so that variable 0 ranks first:
``(N, 0, ..., 0)`` comes first, and ``m`` precedes ``n`` exactly when ``m``
is lexicographically larger than ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Optional, Tuple

MultiIndex = Tuple[int, ...]

DEFAULT_GUARD = 20000


class CapacityError(ValueError):
    """Raised when an induced matrix would exceed the configured size guard."""

    def __init__(self, nu: int, limit: int):
        super().__init__(f"induced dimension nu={nu} exceeds the size guard {limit}")
        self.nu = nu
        self.limit = limit


def dimension(d: int, N: int) -> int:
    """Number of monomials of degree N in d+1 variables, binom(N+d, d)."""
    return comb(N + d, d)


def check_capacity(d: int, N: int, guard: Optional[int] = DEFAULT_GUARD) -> int:
    nu = dimension(d, N)
    if guard is not None and nu > guard:
        raise CapacityError(nu, guard)
    return nu


def precedes(m: MultiIndex, n: MultiIndex) -> bool:
    """Strict dictionary order on multi-indices of equal degree."""
    return m > n


def _compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class IndexTable:
    d: int
    N: int
    ordered: Tuple[MultiIndex, ...]
    _rank: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.ordered)

    def __iter__(self):
        return iter(self.ordered)

    def __getitem__(self, pos: int) -> MultiIndex:
        return self.ordered[pos]

    def rank(self, m: MultiIndex) -> int:
        return self._rank[tuple(m)]

    def get_rank(self, m: MultiIndex) -> Optional[int]:
        return self._rank.get(tuple(m))

    def unrank(self, pos: int) -> MultiIndex:
        return self.ordered[pos]

    def __contains__(self, m) -> bool:
        return tuple(m) in self._rank


@lru_cache(maxsize=None)
def _build_table(d: int, N: int) -> IndexTable:
    ordered = tuple(_compositions(N, d + 1))
    return IndexTable(d, N, ordered, {m: k for k, m in enumerate(ordered)})


def enumerate_indices(d: int, N: int, guard: Optional[int] = DEFAULT_GUARD) -> IndexTable:
    """All multi-indices of degree N over d+1 variables, first entry (N,0,...,0)."""
    if d < 0 or N < 0:
        raise ValueError(f"need d >= 0 and N >= 0, got d={d}, N={N}")
    check_capacity(d, N, guard)
    return _build_table(d, N)


def multinomial(m: MultiIndex) -> int:
    """N! / (m_0! ... m_d!) with N = |m|."""
    out = factorial(sum(m))
    for k in m:
        out //= factorial(k)
    return out


def unit(d: int, i: int) -> MultiIndex:
    return tuple(1 if k == i else 0 for k in range(d + 1))


def neighbors(m: MultiIndex, i: int, j: int) -> Optional[MultiIndex]:
    """``m - e_i + e_j``, or None when ``m_i`` is zero."""
    if m[i] == 0:
        return None
    if i == j:
        return tuple(m)
    out = list(m)
    out[i] -= 1
    out[j] += 1
    return tuple(out)
