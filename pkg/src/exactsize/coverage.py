"""Error criteria, acceptance windows and exact coverage probabilities.

The estimate of ``M/N`` is ``k/n`` where ``k`` is the number of marked units
in the sample. Each criterion is a strict inequality on ``|k/n - M/N|``; for
fixed ``(n, M, N)`` it is satisfied by a contiguous run of ``k`` values, the
acceptance window ``[g, h]``. Coverage is the hypergeometric mass of that
window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .combinatorics import binom, tail_numerator
from .rational import parse_ratio

__all__ = [
    "ABSOLUTE",
    "RELATIVE",
    "MIXED",
    "ErrorCriterion",
    "AcceptanceWindow",
    "PopulationFrame",
    "acceptance_window",
    "coverage",
    "event_holds",
    "mixed_piecewise_check",
]

ABSOLUTE = "absolute"
RELATIVE = "relative"
MIXED = "mixed"


def _radius(value, name):
    r = parse_ratio(value)
    if not 0 < r < 1:
        raise ValueError(f"{name} must lie strictly inside (0, 1), got {r}")
    return r


@dataclass(frozen=True)
class ErrorCriterion:
    """Margin-of-error requirement on the estimate ``k/n``.

    Build one with :meth:`absolute`, :meth:`relative` or :meth:`mixed`
    rather than calling the constructor directly.
    """

    kind: str
    eps: Fraction | None = None
    eps_a: Fraction | None = None
    eps_r: Fraction | None = None

    def __post_init__(self):
        if self.kind in (ABSOLUTE, RELATIVE):
            object.__setattr__(self, "eps", _radius(self.eps, "eps"))
            if self.eps_a is not None or self.eps_r is not None:
                raise ValueError(f"{self.kind} criterion takes only eps")
        elif self.kind == MIXED:
            object.__setattr__(self, "eps_a", _radius(self.eps_a, "eps_a"))
            object.__setattr__(self, "eps_r", _radius(self.eps_r, "eps_r"))
            if self.eps is not None:
                raise ValueError("mixed criterion takes eps_a and eps_r, not eps")
        else:
            raise ValueError(f"unknown criterion kind {self.kind!r}")

    @classmethod
    def absolute(cls, eps) -> "ErrorCriterion":
        return cls(ABSOLUTE, eps=eps)

    @classmethod
    def relative(cls, eps) -> "ErrorCriterion":
        return cls(RELATIVE, eps=eps)

    @classmethod
    def mixed(cls, eps_a, eps_r) -> "ErrorCriterion":
        return cls(MIXED, eps_a=eps_a, eps_r=eps_r)

    def breakpoint(self, N: int) -> int:
        """``floor(N * eps_a / eps_r)``: the largest M judged by the absolute margin."""
        if self.kind != MIXED:
            raise ValueError("only mixed criteria have a breakpoint")
        a, r = self.eps_a, self.eps_r
        return (N * a.numerator * r.denominator) // (a.denominator * r.numerator)

    def branch(self, M: int, N: int) -> "ErrorCriterion":
        """Pure criterion that coincides with this one at ``M``."""
        if self.kind != MIXED:
            return self
        if M <= self.breakpoint(N):
            return _pure(ABSOLUTE, self.eps_a)
        return _pure(RELATIVE, self.eps_r)

    def describe(self) -> dict:
        if self.kind == MIXED:
            return {"kind": self.kind, "eps_abs": self.eps_a, "eps_rel": self.eps_r}
        return {"kind": self.kind, "eps": self.eps}


@lru_cache(maxsize=256)
def _pure(kind, eps):
    return ErrorCriterion(kind, eps=eps)


class AcceptanceWindow(NamedTuple):
    """Accepted sample counts ``g <= k <= h``; empty when ``g > h``."""

    g: int
    h: int

    @property
    def empty(self) -> bool:
        return self.g > self.h


@dataclass(frozen=True)
class PopulationFrame:
    """Population size ``N`` and the interval ``[L, U]`` known to contain ``M``."""

    N: int
    L: int
    U: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"population size must be >= 1, got {self.N}")
        if not 0 <= self.L <= self.U <= self.N:
            raise ValueError(f"need 0 <= L <= U <= N, got L={self.L}, U={self.U}, N={self.N}")

    def __len__(self):
        return self.U - self.L + 1

    def __iter__(self):
        return iter(range(self.L, self.U + 1))


def _check(n, M, N):
    if not 1 <= n <= N or not 0 <= M <= N:
        raise ValueError(f"need 1 <= n <= N and 0 <= M <= N, got n={n}, M={M}, N={N}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def acceptance_window(n: int, M: int, N: int, crit: ErrorCriterion) -> AcceptanceWindow:
    """Integer window of ``k`` for which the criterion's strict inequality holds.

    Absolute: ``g = floor(n(M/N - eps)) + 1`` and ``h = ceil(n(M/N + eps)) - 1``.
    Relative: the same pattern applied to ``nM(1 -/+ eps)/N``. Counts hitting
    the margin exactly are excluded.
    """
    _check(n, M, N)
    crit = crit.branch(M, N)
    p, q = crit.eps.numerator, crit.eps.denominator
    den = N * q
    if crit.kind == ABSOLUTE:
        lo = n * (M * q - p * N)
        hi = n * (M * q + p * N)
    else:
        lo = n * M * (q - p)
        hi = n * M * (q + p)
    return AcceptanceWindow(lo // den + 1, _ceil_div(hi, den) - 1)


def coverage(n: int, M: int, N: int, crit: ErrorCriterion) -> Fraction:
    """Exact probability that ``k/n`` meets the criterion when ``M`` units are marked."""
    g, h = acceptance_window(n, M, N, crit)
    return Fraction(tail_numerator(n, g, h, M, N), binom(N, n))


def event_holds(k: int, n: int, M: int, N: int, crit: ErrorCriterion) -> bool:
    """Evaluate the criterion's inequality for one outcome ``k`` directly.

    Works on cross-multiplied integers, independently of the window algebra.
    """
    gap = abs(k * N - M * n)  # |k/n - M/N| * nN
    if crit.kind == ABSOLUTE:
        e = crit.eps
        return gap * e.denominator < e.numerator * n * N
    if crit.kind == RELATIVE:
        e = crit.eps
        return gap * e.denominator < e.numerator * M * n
    a, r = crit.eps_a, crit.eps_r
    return gap * a.denominator < a.numerator * n * N or gap * r.denominator < r.numerator * M * n


def mixed_piecewise_check(n: int, M: int, N: int, eps_a, eps_r) -> bool:
    """Self-test: the union event's probability equals the selected pure criterion's coverage.

    The left side is summed outcome by outcome from the union of the absolute
    and relative events; the right side is the window-based coverage of the
    pure criterion chosen by the breakpoint.
    """
    _check(n, M, N)
    mixed = ErrorCriterion.mixed(eps_a, eps_r)
    union = sum(
        binom(M, k) * binom(N - M, n - k) for k in range(n + 1) if event_holds(k, n, M, N, mixed)
    )
    return Fraction(union, binom(N, n)) == coverage(n, M, N, mixed.branch(M, N))
