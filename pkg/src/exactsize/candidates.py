"""Candidate sets: the few values of M where minimum coverage can occur.

Coverage, as a function of M, only changes character where the acceptance
window ``[g(M), h(M)]`` jumps. Between consecutive jump points it cannot dip
below both neighbours, so the minimum over ``[L, U]`` is found among the
frame endpoints and the jump points inside the frame. The jump points are the
floor family (where ``h`` steps) and the ceiling family (where ``g`` steps).

Family members are enumerated from an exact ``k`` range, so building a set
costs time proportional to its size, never to ``U - L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coverage import ABSOLUTE, MIXED, RELATIVE, ErrorCriterion, PopulationFrame
from .rational import parse_ratio

__all__ = [
    "ENDPOINT",
    "BREAKPOINT",
    "FLOOR_FAMILY",
    "CEILING_FAMILY",
    "CandidateSet",
    "MixedPreconditionError",
    "absolute_family_ranges",
    "relative_family_ranges",
    "candidate_set_absolute",
    "candidate_set_relative",
    "candidate_set_mixed",
    "candidate_set",
    "reflect_frame",
]

ENDPOINT = "endpoint"
BREAKPOINT = "breakpoint"
FLOOR_FAMILY = "floor_family"
CEILING_FAMILY = "ceiling_family"
_PRECEDENCE = {ENDPOINT: 0, BREAKPOINT: 1, FLOOR_FAMILY: 2, CEILING_FAMILY: 3}


class MixedPreconditionError(ValueError):
    """The mixed-criterion breakpoint ``N eps_a / eps_r`` is not strictly inside ``(L, U)``.

    Use :func:`candidate_set`, which substitutes the pure absolute or pure
    relative set (or a piecewise set when the breakpoint sits on an endpoint).
    """

    def __init__(self, frame, crit, fallback):
        self.frame = frame
        self.criterion = crit
        self.fallback = fallback
        super().__init__(
            f"need L < N*eps_a/eps_r < U; got N*eps_a/eps_r = "
            f"{frame.N * crit.eps_a / crit.eps_r} for [L, U] = [{frame.L}, {frame.U}]; "
            f"fallback: {fallback}"
        )


@dataclass
class CandidateSet:
    """Sorted candidate values of M with the reason each one is present."""

    members: tuple
    provenance: dict
    bound: Fraction
    note: str | None = field(default=None)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, M):
        return M in self.provenance

    def within_bound(self) -> bool:
        return len(self.members) < self.bound


class _Collector:
    """Gathers members; a higher-precedence tag overrides a lower one."""

    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi
        self.groups = {tag: [] for tag in _PRECEDENCE}

    def add(self, M, tag):
        if self.lo <= M <= self.hi:
            self.groups[tag].append(M)

    def extend(self, values, tag):
        self.groups[tag].extend(values)

    def build(self, bound, note=None):
        tags = {}
        for tag in sorted(_PRECEDENCE, key=_PRECEDENCE.get, reverse=True):
            tags.update(dict.fromkeys(self.groups[tag], tag))
        members = tuple(sorted(tags))
        return CandidateSet(members, tags, bound, note)


def _ceil_div(a, b):
    return -((-a) // b)


def absolute_family_ranges(N: int, n: int, eps: Fraction, a: int, b: int):
    """Inclusive ``k`` ranges whose family values fall strictly inside ``(a, b)``.

    Returns ``((k0, k1), (j0, j1))``: ``floor(N(k/n - eps))`` lies in
    ``(a, b)`` exactly for ``k0 <= k <= k1`` and ``ceil(N(j/n + eps))`` lies
    in ``(a, b)`` exactly for ``j0 <= j <= j1``.
    """
    p, q = eps.numerator, eps.denominator
    Nq = N * q
    k0 = _ceil_div(n * ((a + 1) * q + p * N), Nq)
    k1 = _ceil_div(n * (b * q + p * N), Nq) - 1
    j0 = (n * (a * q - p * N)) // Nq + 1
    j1 = (n * ((b - 1) * q - p * N)) // Nq
    return (k0, k1), (j0, j1)


def relative_family_ranges(N: int, n: int, eps: Fraction, a: int, b: int):
    """Like :func:`absolute_family_ranges` for ``floor(Nk/((1+eps)n))`` and ``ceil(Nj/((1-eps)n))``."""
    p, q = eps.numerator, eps.denominator
    Nq = N * q
    k0 = _ceil_div((a + 1) * (q + p) * n, Nq)
    k1 = _ceil_div(b * (q + p) * n, Nq) - 1
    j0 = (a * (q - p) * n) // Nq + 1
    j1 = ((b - 1) * (q - p) * n) // Nq
    return (k0, k1), (j0, j1)


def _absolute_families(col, N, n, eps, a, b):
    if b - a < 2:
        return
    p, q = eps.numerator, eps.denominator
    (k0, k1), (j0, j1) = absolute_family_ranges(N, n, eps, a, b)
    nq, pn = n * q, p * n
    col.extend([(N * (k * q - pn)) // nq for k in range(k0, k1 + 1)], FLOOR_FAMILY)
    col.extend([-((-N * (j * q + pn)) // nq) for j in range(j0, j1 + 1)], CEILING_FAMILY)


def _relative_families(col, N, n, eps, a, b):
    if b - a < 2:
        return
    p, q = eps.numerator, eps.denominator
    (k0, k1), (j0, j1) = relative_family_ranges(N, n, eps, a, b)
    Nq = N * q
    up, down = (q + p) * n, (q - p) * n
    col.extend([(Nq * k) // up for k in range(k0, k1 + 1)], FLOOR_FAMILY)
    col.extend([-((-Nq * j) // down) for j in range(j0, j1 + 1)], CEILING_FAMILY)


def _pure_bound(frame, n):
    return Fraction(2 * n * (frame.U - frame.L - 1), frame.N) + 4


def _mixed_bound(frame, n):
    return Fraction(2 * n * (frame.U - frame.L - 3), frame.N) + 8


def _check_args(frame, n):
    if not 1 <= n <= frame.N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={frame.N}")


def candidate_set_absolute(frame: PopulationFrame, n: int, eps) -> CandidateSet:
    """Candidates for the absolute criterion ``|k/n - M/N| < eps``.

    ``{L, U}`` together with every ``floor(N(k/n - eps))`` and
    ``ceil(N(k/n + eps))`` lying strictly between ``L`` and ``U``.

    >>> candidate_set_absolute(PopulationFrame(10, 0, 10), 4, Fraction(1, 10)).members
    (0, 1, 4, 6, 9, 10)
    """
    _check_args(frame, n)
    eps = parse_ratio(eps)
    col = _Collector(frame.L, frame.U)
    col.add(frame.L, ENDPOINT)
    col.add(frame.U, ENDPOINT)
    _absolute_families(col, frame.N, n, eps, frame.L, frame.U)
    return col.build(_pure_bound(frame, n))


def candidate_set_relative(frame: PopulationFrame, n: int, eps) -> CandidateSet:
    """Candidates for the relative criterion ``|k/n - M/N| < eps M/N``.

    ``{L, U}`` together with every ``floor(Nk/((1+eps)n))`` and
    ``ceil(Nk/((1-eps)n))`` lying strictly between ``L`` and ``U``.
    """
    _check_args(frame, n)
    eps = parse_ratio(eps)
    col = _Collector(frame.L, frame.U)
    col.add(frame.L, ENDPOINT)
    col.add(frame.U, ENDPOINT)
    _relative_families(col, frame.N, n, eps, frame.L, frame.U)
    return col.build(_pure_bound(frame, n))


def _piecewise(frame, n, eps_a, eps_r, B, note=None):
    # absolute families below the breakpoint, relative families above it
    col = _Collector(frame.L, frame.U)
    col.add(frame.L, ENDPOINT)
    col.add(frame.U, ENDPOINT)
    col.add(B, BREAKPOINT)
    col.add(B + 1, BREAKPOINT)
    _absolute_families(col, frame.N, n, eps_a, frame.L, B)
    _relative_families(col, frame.N, n, eps_r, B + 1, frame.U)
    return col.build(_mixed_bound(frame, n), note)


def _mixed_fallback(frame, crit):
    x = frame.N * crit.eps_a / crit.eps_r
    if x < frame.L:
        return "pure relative (breakpoint below frame)"
    if x >= frame.U:
        return "pure absolute (breakpoint at or above upper end)"
    return "piecewise split at breakpoint = L"


def candidate_set_mixed(frame: PopulationFrame, n: int, eps_a, eps_r) -> CandidateSet:
    """Candidates for the union of absolute (``eps_a``) and relative (``eps_r``) events.

    Requires ``L < N eps_a / eps_r < U``. With ``B = floor(N eps_a / eps_r)``
    the set is ``{L, U, B, B + 1}``, the absolute families inside ``(L, B)``
    and the relative families inside ``(B + 1, U)``.
    """
    _check_args(frame, n)
    crit = ErrorCriterion.mixed(eps_a, eps_r)
    N, L, U = frame.N, frame.L, frame.U
    a, r = crit.eps_a, crit.eps_r
    if not L * r < N * a < U * r:
        raise MixedPreconditionError(frame, crit, _mixed_fallback(frame, crit))
    return _piecewise(frame, n, a, r, crit.breakpoint(N))


def candidate_set(frame: PopulationFrame, n: int, crit: ErrorCriterion) -> CandidateSet:
    """Candidate set for any criterion, including mixed frames whose breakpoint lies outside (L, U).

    For a mixed criterion whose breakpoint ``B`` is below ``L`` the relative
    set is used, and when ``B >= U`` the absolute set. When ``N eps_a/eps_r``
    equals ``L`` exactly the piecewise construction still applies with
    ``B = L``. The substitution is recorded in ``note``.
    """
    if crit.kind == ABSOLUTE:
        return candidate_set_absolute(frame, n, crit.eps)
    if crit.kind == RELATIVE:
        return candidate_set_relative(frame, n, crit.eps)
    assert crit.kind == MIXED
    try:
        return candidate_set_mixed(frame, n, crit.eps_a, crit.eps_r)
    except MixedPreconditionError as exc:
        fallback = exc.fallback
    B = crit.breakpoint(frame.N)
    if B < frame.L:
        cs = candidate_set_relative(frame, n, crit.eps_r)
    elif B >= frame.U:
        cs = candidate_set_absolute(frame, n, crit.eps_a)
    else:
        cs = _piecewise(frame, n, crit.eps_a, crit.eps_r, B)
    cs.note = fallback
    return cs


def reflect_frame(frame: PopulationFrame) -> PopulationFrame:
    """Mirror ``[L, U]`` to ``[N - U, N - L]``; absolute coverage is invariant under ``M -> N - M``."""
    return PopulationFrame(frame.N, frame.N - frame.U, frame.N - frame.L)
