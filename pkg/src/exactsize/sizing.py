"""Minimum sample size search.

For each trial sample size ``n`` the worst-case coverage over ``[L, U]`` is
taken over the candidate set only. The search starts at ``n = 2`` and never
returns ``n = 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .candidates import candidate_set
from .coverage import ABSOLUTE, RELATIVE, ErrorCriterion, PopulationFrame, coverage
from .rational import parse_ratio

log = logging.getLogger(__name__)

__all__ = [
    "ASCENDING",
    "ACCELERATED",
    "SizingRequest",
    "SampleSizeResult",
    "TraceEntry",
    "FrameMinimum",
    "InfeasibleError",
    "UnreachableError",
    "evaluation_points",
    "frame_minimum",
    "min_coverage_over_frame",
    "minimum_sample_size",
    "sizing_trace",
]

ASCENDING = "ascending"
ACCELERATED = "accelerated"

Evaluator = Callable[[int, int, int, ErrorCriterion], Fraction]


class InfeasibleError(ValueError):
    """No sample size can work: some M in the frame has coverage 0 for every ``n``."""

    def __init__(self, message, witness_M):
        super().__init__(message)
        self.witness_M = witness_M


class UnreachableError(ValueError):
    """No ``n`` in ``[2, N]`` meets the requirement."""


@dataclass(frozen=True)
class SizingRequest:
    frame: PopulationFrame
    criterion: ErrorCriterion
    delta: Fraction
    search_mode: str = ASCENDING

    def __post_init__(self):
        d = parse_ratio(self.delta)
        if not 0 < d < 1:
            raise ValueError(f"delta must lie strictly inside (0, 1), got {d}")
        object.__setattr__(self, "delta", d)
        if self.search_mode not in (ASCENDING, ACCELERATED):
            raise ValueError(f"unknown search mode {self.search_mode!r}")


@dataclass(frozen=True)
class SampleSizeResult:
    n_min: int
    worst_M: int
    min_coverage: Fraction
    coverage_evaluations: int
    candidates_at_n_min: int


class TraceEntry(NamedTuple):
    """One sample size visited by the search.

    ``exhaustive`` is False when the scan stopped at the first M whose
    coverage already fails; ``worst_M``/``min_coverage`` then hold that
    failing witness rather than the minimum.
    """

    n: int
    worst_M: int
    min_coverage: Fraction
    exhaustive: bool = True


class FrameMinimum(NamedTuple):
    worst_M: int
    value: Fraction
    evaluations: int
    candidates: int
    exhaustive: bool = True


def _fold(frame: PopulationFrame) -> PopulationFrame | None:
    # image of [L, U] under M -> min(M, N - M), used only if strictly smaller
    N, L, U = frame.N, frame.L, frame.U
    if 2 * U <= N or 2 * L >= N:
        return None
    folded = PopulationFrame(N, min(L, N - U), N // 2)
    return folded if folded.U - folded.L < U - L else None


def _known_value(M: int, N: int, crit: ErrorCriterion) -> Fraction | None:
    if M == N:
        return Fraction(1)
    if M == 0:
        return Fraction(0) if crit.kind == RELATIVE else Fraction(1)
    return None


def evaluation_points(n: int, frame: PopulationFrame, crit: ErrorCriterion):
    """Points whose coverage decides the frame minimum.

    Returns ``(points, candidate_count)`` where each point is
    ``(M, originals)``: coverage is evaluated at ``M`` and stands for every
    value in ``originals`` (``M`` and, after symmetry folding, ``N - M``)
    lying inside the frame. Folding is applied only to the absolute criterion.
    """
    folded = _fold(frame) if crit.kind == ABSOLUTE else None
    if folded is None:
        cs = candidate_set(frame, n, crit)
        return [(M, (M,)) for M in cs.members], len(cs)
    cs = candidate_set(folded, n, crit)
    N, L, U = frame.N, frame.L, frame.U
    members = set(cs.members)
    members.add(L)  # keeps the smallest-M tie-break inside the original frame
    points = []
    for M in sorted(members):
        if M >= L:
            points.append((M, (M, N - M) if N - M <= U and N - M != M else (M,)))
        elif N - M <= U:
            points.append((M, (N - M,)))
    return points, len(cs)


def frame_minimum(
    n: int,
    frame: PopulationFrame,
    crit: ErrorCriterion,
    evaluate: Evaluator = coverage,
    fail_at: Fraction | None = None,
    hint: int | None = None,
) -> FrameMinimum:
    """Minimum coverage over the frame, evaluated on candidates only.

    Ties go to the smallest M among the evaluated points. When ``fail_at`` is
    given the scan stops at the first point with coverage ``<= fail_at``
    (trying ``hint`` first) and the result is marked non-exhaustive.
    """
    if not 1 <= n <= frame.N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={frame.N}")
    points, ncand = evaluation_points(n, frame, crit)
    if hint is not None:
        points.sort(key=lambda p: hint not in p[1])
    best_M, best = None, None
    evaluations = 0
    for M, originals in points:
        value = _known_value(M, frame.N, crit)
        if value is None:
            value = evaluate(n, M, frame.N, crit)
            evaluations += 1
        if fail_at is not None and value <= fail_at:
            return FrameMinimum(originals[0], value, evaluations, ncand, exhaustive=False)
        if best is None or value < best or (value == best and originals[0] < best_M):
            best, best_M = value, originals[0]
    return FrameMinimum(best_M, best, evaluations, ncand)


def min_coverage_over_frame(n: int, frame: PopulationFrame, crit: ErrorCriterion):
    """Return ``(worst_M, value)``, the exact minimum coverage over ``[L, U]``."""
    fm = frame_minimum(n, frame, crit)
    return fm.worst_M, fm.value


def _search(req: SizingRequest, evaluate: Evaluator = coverage):
    frame, crit = req.frame, req.criterion
    if crit.kind == RELATIVE and frame.L == 0:
        raise InfeasibleError(
            "relative criterion with L = 0: coverage at M = 0 is 0 for every n", witness_M=0
        )
    if frame.N < 2:
        raise UnreachableError(f"no sample size in [2, N] for N = {frame.N}")
    threshold = 1 - req.delta
    trace = []
    done = {}
    total = 0

    def full(n):
        nonlocal total
        fm = frame_minimum(n, frame, crit, evaluate)
        total += fm.evaluations
        trace.append(TraceEntry(n, fm.worst_M, fm.value))
        done[n] = fm
        return fm

    def finish(n):
        fm = done[n]
        return SampleSizeResult(n, fm.worst_M, fm.value, total, fm.candidates), trace

    if req.search_mode == ASCENDING:
        for n in range(2, frame.N + 1):
            if full(n).value > threshold:
                return finish(n)
        raise UnreachableError(f"no n <= N = {frame.N} reaches coverage > {threshold}")

    # accelerated: doubling probe, bisection, then confirm every smaller n fails
    lo, hi = 1, None
    n = 2
    while hi is None:
        if full(n).value > threshold:
            hi = n
        elif n == frame.N:
            raise UnreachableError(f"no n <= N = {frame.N} reaches coverage > {threshold}")
        else:
            lo, n = n, min(2 * n, frame.N)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if full(mid).value > threshold:
            hi = mid
        else:
            lo = mid
    hint = done[lo].worst_M if lo in done else None
    for n in range(2, hi):
        if n in done:
            continue
        fm = frame_minimum(n, frame, crit, evaluate, fail_at=threshold, hint=hint)
        total += fm.evaluations
        if fm.exhaustive:
            # minimum over the frame exceeds the threshold: an earlier answer
            log.info("accelerated search: n=%d passes below bisection result %d", n, hi)
            trace.append(TraceEntry(n, fm.worst_M, fm.value))
            done[n] = fm
            return finish(n)
        trace.append(TraceEntry(n, fm.worst_M, fm.value, exhaustive=False))
        hint = fm.worst_M
    trace.append(trace.pop(next(i for i, e in enumerate(trace) if e.n == hi and e.exhaustive)))
    return finish(hi)


def minimum_sample_size(req: SizingRequest, evaluate: Evaluator = coverage) -> SampleSizeResult:
    """Smallest ``n >= 2`` whose coverage exceeds ``1 - delta`` at every M in the frame."""
    return _search(req, evaluate)[0]


def sizing_trace(req: SizingRequest, evaluate: Evaluator = coverage) -> list:
    """Every sample size the search visited, in order; the last entry is the answer."""
    return _search(req, evaluate)[1]
