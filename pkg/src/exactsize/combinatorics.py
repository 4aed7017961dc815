"""Exact binomial and hypergeometric primitives.

Every value returned here is either a Python ``int`` or a
:class:`fractions.Fraction`; nothing touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = ["HyperParams", "binom", "hyper_pmf", "tail_numerator", "S", "T"]


@dataclass(frozen=True)
class HyperParams:
    """Population size ``N``, attribute count ``M`` and sample size ``n``."""

    N: int
    M: int
    n: int

    def __post_init__(self):
        if not 0 <= self.M <= self.N:
            raise ValueError(f"need 0 <= M <= N, got M={self.M}, N={self.N}")
        if not 1 <= self.n <= self.N:
            raise ValueError(f"need 1 <= n <= N, got n={self.n}, N={self.N}")


@lru_cache(maxsize=1 << 16)
def _comb_cached(m: int, z: int) -> int:
    return math.comb(m, z)


def binom(m: int, z: int) -> int:
    """Binomial coefficient that is zero outside ``0 <= z <= m``.

    >>> binom(5, 2), binom(5, -1), binom(0, 0)
    (10, 0, 1)
    """
    if m < 0:
        raise ValueError(f"binom requires m >= 0, got m={m}")
    if z < 0 or z > m:
        return 0
    return _comb_cached(m, min(z, m - z))


def tail_numerator(n: int, k: int, l: int, M: int, N: int) -> int:
    """Return ``sum_{i=k}^{l} C(M,i) C(N-M,n-i)`` as an exact integer.

    Dividing by ``C(N, n)`` gives ``S(n, k, l, M, N)``. Terms after the first
    are produced by the ratio of consecutive summands, so only one pair of
    binomials is evaluated directly.
    """
    lo = max(k, 0, n - (N - M))
    hi = min(l, n, M)
    if lo > hi:
        return 0
    rest = N - M - n
    term = binom(M, lo) * binom(N - M, n - lo)
    total = term
    for i in range(lo, hi):
        term = term * (M - i) * (n - i) // ((i + 1) * (rest + i + 1))
        total += term
    return total


def S(n: int, k: int, l: int, M: int, N: int) -> Fraction:
    """Probability that a hypergeometric count lies in ``[k, l]``.

    The count is the number of marked units in a size-``n`` sample drawn
    without replacement from ``N`` units of which ``M`` are marked. Any
    integers ``k`` and ``l`` are accepted; an empty range gives 0.
    """
    if not 0 <= M <= N or not 1 <= n <= N:
        raise ValueError(f"invalid parameters n={n}, M={M}, N={N}")
    return Fraction(tail_numerator(n, k, l, M, N), binom(N, n))


def hyper_pmf(p: HyperParams, i: int) -> Fraction:
    """Probability of observing exactly ``i`` marked units."""
    return Fraction(binom(p.M, i) * binom(p.N - p.M, p.n - i), binom(p.N, p.n))


def T(k: int, M: int, N: int, n: int) -> Fraction:
    """Difference kernel ``C(M,k) C(N-M-1,n-k-1) / C(N,n)``.

    Equals ``S(n,0,k,M,N) - S(n,0,k,M+1,N)``, the probability mass that the
    lower tail ``[0, k]`` loses when one more unit carries the attribute.
    Requires ``0 <= M < N``.
    """
    if not 0 <= M < N or not 1 <= n <= N:
        raise ValueError(f"T requires 0 <= M < N and 1 <= n <= N, got M={M}, N={N}, n={n}")
    return Fraction(binom(M, k) * binom(N - M - 1, n - k - 1), binom(N, n))
