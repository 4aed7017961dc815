"""Independent verifiers: full scans, exhaustive identity checks, simulation.

Nothing here is needed to compute a sample size. These routines exist to
catch mistakes in the fast path: a full scan over every M, outcome-by-outcome
coverage sums, exhaustive checks of the difference identities and
inequalities behind the candidate sets, and a seeded simulation of sampling
without replacement.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .candidates import candidate_set
from .combinatorics import S, T, binom
from .coverage import ErrorCriterion, PopulationFrame, coverage, event_holds
from .sizing import _known_value, evaluation_points, frame_minimum

__all__ = [
    "GridSpec",
    "VerificationReport",
    "full_scan_min",
    "coverage_by_events",
    "check_lemma_suite",
    "check_window_consistency",
    "check_candidate_sweep",
    "check_mixed_sweep",
    "check_candidate_economy",
    "monte_carlo_coverage",
    "run_verification",
    "FAST",
    "SLOW",
]

FAST = "fast"
SLOW = "slow"
DEFAULT_EPS = (Fraction(1, 20), Fraction(1, 10), Fraction(1, 4), Fraction(9, 20))
BOUNDARY_EPS = (
    Fraction(1, 20),
    Fraction(1, 10),
    Fraction(1, 8),
    Fraction(1, 4),
    Fraction(9, 20),
    Fraction(1, 2) - Fraction(1, 1000),
)


@dataclass(frozen=True)
class GridSpec:
    """Which instances a sweep visits.

    ``n_policy`` is ``"all"`` (every ``n`` in ``[2, N]``), ``"divisors"``
    (``n`` dividing ``N``) or ``"list"`` (``n_list`` clipped to ``N``).
    ``frame_policy`` is ``"full"`` (``[L0, N]``), ``"halves"`` (``[L0, N]``
    and ``[L0, ceil(N/2)]``) or ``"random"`` (the halves plus ``count``
    seeded random frames per ``N``). ``L0`` is ``min_lower``.
    """

    N_range: tuple = (2, 60)
    n_policy: str = "all"
    n_list: tuple = ()
    eps_list: tuple = DEFAULT_EPS
    frame_policy: str = "random"
    seed: int = 0
    count: int = 5
    min_lower: int = 0

    def __post_init__(self):
        lo, hi = self.N_range
        if lo < 2 or hi < lo:
            raise ValueError(f"bad N_range {self.N_range}")
        if self.n_policy not in ("all", "divisors", "list"):
            raise ValueError(f"bad n_policy {self.n_policy!r}")
        if self.frame_policy not in ("full", "halves", "random"):
            raise ValueError(f"bad frame_policy {self.frame_policy!r}")
        for e in self.eps_list:
            if not 0 < e < 1:
                raise ValueError(f"eps {e} outside (0, 1)")

    def Ns(self):
        return range(self.N_range[0], self.N_range[1] + 1)

    def sample_sizes(self, N):
        if self.n_policy == "all":
            return list(range(2, N + 1))
        if self.n_policy == "divisors":
            return [n for n in range(2, N + 1) if N % n == 0]
        return sorted({n for n in self.n_list if 2 <= n <= N})

    def frames(self, N):
        L0 = min(self.min_lower, N)
        out = [(L0, N)]
        if self.frame_policy != "full":
            out.append((L0, max(L0, (N + 1) // 2)))
        if self.frame_policy == "random":
            rng = random.Random(f"{self.seed}:{N}")
            for _ in range(self.count):
                L = rng.randint(L0, N)
                out.append((L, rng.randint(L, N)))
        seen = []
        for f in out:
            if f not in seen:
                seen.append(f)
        return [PopulationFrame(N, L, U) for L, U in seen]


@dataclass
class VerificationReport:
    """Outcome of a batch of checks.

    ``groups`` holds one summary row per (check, N) in canonical order;
    ``failures`` lists ``(instance, expected, actual)`` triples.
    """

    instances_checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    groups: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, instance, expected, actual):
        self.instances_checked += 1
        if expected != actual:
            self.failures.append((instance, expected, actual))
            return False
        return True

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        self.elapsed += other.elapsed
        self.groups.extend(other.groups)
        return self

    def lines(self):
        """One JSON line per group, in canonical order."""
        for g in self.groups:
            yield json.dumps(g, sort_keys=False)

    def summary(self) -> dict:
        return {
            "pass": self.passed,
            "instances_checked": self.instances_checked,
            "failure_count": len(self.failures),
            "failures": [
                {"instance": str(i), "expected": str(e), "actual": str(a)}
                for i, e, a in self.failures[:50]
            ],
            "groups": self.groups,
        }


class _Group:
    """Counts instances for one summary line of a report."""

    def __init__(self, report, check, **labels):
        self.report, self.check, self.labels = report, check, labels
        self.start_count = report.instances_checked
        self.start_fail = len(report.failures)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        r = self.report
        r.groups.append(
            {
                "check": self.check,
                **self.labels,
                "instances": r.instances_checked - self.start_count,
                "failures": len(r.failures) - self.start_fail,
            }
        )


def full_scan_min(n: int, frame: PopulationFrame, crit: ErrorCriterion, evaluate=coverage):
    """Evaluate coverage at every M in ``[L, U]``; smallest M wins ties."""
    best_M, best = None, None
    for M in frame:
        v = evaluate(n, M, frame.N, crit)
        if best is None or v < best:
            best_M, best = M, v
    return best_M, best


def coverage_by_events(n: int, M: int, N: int, crit: ErrorCriterion) -> Fraction:
    """Coverage summed outcome by outcome from the criterion's inequality."""
    num = sum(binom(M, k) * binom(N - M, n - k) for k in range(n + 1) if event_holds(k, n, M, N, crit))
    return Fraction(num, binom(N, n))


# ---------------------------------------------------------------------------
# identity and inequality checks on S and T


def _prefix_table(n, N):
    # P[M][j] = numerator of S(n, 0, j - 1, M, N), j = 0 .. n + 1
    table = []
    for M in range(N + 1):
        row = [0]
        for j in range(n + 1):
            row.append(row[-1] + binom(M, j) * binom(N - M, n - j))
        table.append(row)
    return table


def _s_num(P, n, k, l):
    # numerator of S(n, k, l, M, N) from one prefix row P
    if k > l:
        return 0
    lo, hi = max(k, 0), min(l, n)
    if lo > hi:
        return 0
    return P[hi + 1] - P[lo]


def _unimodal(seq):
    # True when seq never rises after it has fallen
    fallen = False
    for a, b in zip(seq, seq[1:]):
        if b < a:
            fallen = True
        elif b > a and fallen:
            return False
    return True


def _endpoint_min_ok(seq):
    # min over every [L, U] equals min at its endpoints; equivalent to
    # each entry being >= min(max of entries to its left, max to its right)
    m = len(seq)
    left, right = [0] * m, [0] * m
    acc = None
    for i, v in enumerate(seq):
        acc = v if acc is None else max(acc, v)
        left[i] = acc
    acc = None
    for i in range(m - 1, -1, -1):
        acc = seq[i] if acc is None else max(acc, seq[i])
        right[i] = acc
    return all(seq[i] >= min(left[i], right[i]) for i in range(m))


def _lemma_grid_eps(N, n):
    eps = set(BOUNDARY_EPS)
    # radii that put N(k/n -/+ eps) exactly on an integer for some k
    for e in (Fraction(1, N), Fraction(2, N), Fraction(1, n), Fraction(1, 2) - Fraction(1, 2 * n)):
        if 0 < e < 1:
            eps.add(e)
    return sorted(eps)


def _floor_q(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_q(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _lemmas_for_N(N: int) -> VerificationReport:
    rep = VerificationReport()
    t0 = time.perf_counter()

    with _Group(rep, "lemma1", N=N):
        for n in range(1, N + 1):
            for M in range(N):
                for k in range(-1, n + 2):
                    rep.record(("lemma1", N, M, n, k), S(n, 0, k, M, N) - S(n, 0, k, M + 1, N), T(k, M, N, n))

    with _Group(rep, "lemma2", N=N):
        for n in range(1, N + 1):
            for M in range(1, N + 1):
                Ts = {j: T(j, M - 1, N, n) for j in range(-2, n + 2)}
                for k in range(-1, n + 2):
                    for l in range(k, n + 2):
                        rep.record(
                            ("lemma2", N, M, n, k, l),
                            S(n, k, l, M, N) - S(n, k, l, M - 1, N),
                            Ts[k - 1] - Ts[l],
                        )

    with _Group(rep, "lemma3", N=N):
        for n in range(2, N + 1):
            for M in range(N + 1):
                f = (n * M) // (N + 1)
                for l in range(0, n + 1):
                    if M >= 1 + (N * l) // (n - 1):
                        rep.record(("lemma3a", N, n, M, l), True, f >= l)
                for k in range(0, n):
                    if M <= 1 + (N * (k - 1)) // (n - 1):
                        rep.record(("lemma3b", N, n, M, k), True, f <= k - 1)

    with _Group(rep, "lemma4", N=N):
        for n in range(1, N + 1):
            for M in range(1, N + 1):
                f = (n * M) // (N + 1)
                for r in range(0, n + 1):
                    if 1 <= r <= f:
                        rep.record(("lemma4.I.a", N, n, M, r), True, T(r - 1, M - 1, N, n) <= T(r, M - 1, N, n))
                    if f <= r <= n - 1:
                        rep.record(("lemma4.I.b", N, n, M, r), True, T(r + 1, M - 1, N, n) <= T(r, M - 1, N, n))
                    if n >= 2:
                        cut = 1 + (N * r) // (n - 1)
                        if 1 < M <= cut:
                            rep.record(("lemma4.II.a", N, n, M, r), True, T(r, M - 2, N, n) <= T(r, M - 1, N, n))
                        if cut <= M < N:
                            rep.record(("lemma4.II.b", N, n, M, r), True, T(r, M, N, n) <= T(r, M - 1, N, n))

    with _Group(rep, "lemma5", N=N):
        for n in range(1, N + 1):
            P = _prefix_table(n, N)
            for k in range(-1, n + 2):
                for l in range(k, n + 2):
                    seq = [_s_num(P[M], n, k, l) for M in range(N + 1)]
                    rep.record(("lemma5", N, n, k, l), True, _endpoint_min_ok(seq))
                    if 0 < k <= l < n:
                        rep.record(("lemma5.unimodal", N, n, k, l), True, _unimodal(seq))

    with _Group(rep, "lemma6_7", N=N):
        for n in range(1, N + 1):
            for e in _lemma_grid_eps(N, n):
                for k in range(-1, n + 2):
                    r = _floor_q(N * (Fraction(k, n) - e))
                    r2 = _floor_q(N * (Fraction(k + 1, n) - e))
                    rep.record(("lemma6", N, n, e, k, r), k, _ceil_q(n * (Fraction(r, N) + e)))
                    for m in range(r + 1, r2 + 1):
                        rep.record(("lemma6", N, n, e, k, m), k + 1, _ceil_q(n * (Fraction(m, N) + e)))
                    c = _ceil_q(N * (Fraction(k, n) + e))
                    c2 = _ceil_q(N * (Fraction(k + 1, n) + e))
                    for m in range(c, c2):
                        rep.record(("lemma7", N, n, e, k, m), k, _floor_q(n * (Fraction(m, N) - e)))
                    rep.record(("lemma7", N, n, e, k, c2), k + 1, _floor_q(n * (Fraction(c2, N) - e)))

    with _Group(rep, "lemma8_9", N=N):
        for n in range(1, N + 1):
            P = _prefix_table(n, N)
            for g in range(-1, n + 2):
                for h in range(g, n + 2):
                    for rho in range(N):
                        d = _s_num(P[rho + 1], n, g, h + 1) - _s_num(P[rho], n, g, h)
                        rep.record(("lemma8", N, n, g, h, rho), True, d >= 0)
                    for tau in range(1, N + 1):
                        d = _s_num(P[tau - 1], n, g - 1, h) - _s_num(P[tau], n, g, h)
                        rep.record(("lemma9", N, n, g, h, tau), True, d >= 0)

    rep.elapsed = time.perf_counter() - t0
    return rep


def _run(fn, args_list, workers):
    if workers and workers > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(fn, *zip(*args_list)))
    else:
        parts = [fn(*a) for a in args_list]
    out = VerificationReport()
    for p in parts:
        out.merge(p)
    return out


def check_lemma_suite(N_max: int, workers: int = 1) -> VerificationReport:
    """Exhaustively check the difference identities and inequalities for every ``N <= N_max``.

    Covers the one-step difference of lower tails (``T``), the difference of
    window sums, the floor bounds on ``nM/(N+1)``, the monotonicity of ``T``
    in ``r`` and in ``M``, the endpoint-minimum property of ``S`` over any
    ``[L, U]`` together with unimodality of interior windows, the
    floor/ceiling interlacing identities and the two window-shift comparisons.
    Failures are data in the report, never exceptions.
    """
    if N_max < 2:
        raise ValueError("N_max must be >= 2")
    t0 = time.perf_counter()
    rep = _run(_lemmas_for_N, [(N,) for N in range(1, N_max + 1)], workers)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# coverage and candidate sweeps


def _window_for_N(N: int, eps_list) -> VerificationReport:
    rep = VerificationReport()
    crits = []
    for e in eps_list:
        crits += [ErrorCriterion.absolute(e), ErrorCriterion.relative(e)]
    for ea in eps_list:
        for er in eps_list:
            crits.append(ErrorCriterion.mixed(ea, er))
    with _Group(rep, "window", N=N):
        for n in range(1, N + 1):
            for crit in crits:
                for M in range(N + 1):
                    rep.record(("window", N, n, M, crit), coverage_by_events(n, M, N, crit), coverage(n, M, N, crit))
    return rep


def check_window_consistency(N_max: int, eps_list=DEFAULT_EPS, workers: int = 1) -> VerificationReport:
    """Window-based coverage equals the outcome-by-outcome sum for all ``N <= N_max``."""
    t0 = time.perf_counter()
    rep = _run(_window_for_N, [(N, tuple(eps_list)) for N in range(1, N_max + 1)], workers)
    rep.elapsed = time.perf_counter() - t0
    return rep


def _compare_frames(rep, tag, N, n, crit, frames):
    row = [coverage(n, M, N, crit) for M in range(N + 1)]
    lookup = lambda n_, M, N_, c: row[M]  # noqa: E731
    for frame in frames:
        _, want = full_scan_min(n, frame, crit, lookup)
        fm = frame_minimum(n, frame, crit, lookup)
        inst = (tag, N, n, frame.L, frame.U, crit)
        rep.record(inst, want, fm.value)
        rep.record(inst + ("worst_M",), fm.value, row[fm.worst_M])
        cs = candidate_set(frame, n, crit)
        rep.record(inst + ("bound", len(cs), cs.bound), True, cs.within_bound())


def _sweep_for_N(N: int, grid: GridSpec, kind: str) -> VerificationReport:
    rep = VerificationReport()
    frames = grid.frames(N)
    with _Group(rep, f"candidates_{kind}", N=N):
        for n in grid.sample_sizes(N):
            for e in grid.eps_list:
                crit = ErrorCriterion.absolute(e) if kind == "absolute" else ErrorCriterion.relative(e)
                _compare_frames(rep, kind, N, n, crit, frames)
    return rep


def check_candidate_sweep(grid: GridSpec, kind: str = "absolute", workers: int = 1) -> VerificationReport:
    """Candidate-set minimum equals the full-scan minimum on every grid instance.

    Each instance contributes three records: the minimum itself, that the
    reported ``worst_M`` attains it, and the size bound of the candidate set.
    For ``kind="relative"`` frames with ``L = 0`` are skipped (coverage at
    ``M = 0`` is identically 0); pass ``min_lower=1`` in the grid to avoid them.
    """
    if kind not in ("absolute", "relative"):
        raise ValueError(f"kind must be absolute or relative, got {kind!r}")
    if kind == "relative" and grid.min_lower < 1:
        grid = GridSpec(**{**grid.__dict__, "min_lower": 1})
    t0 = time.perf_counter()
    rep = _run(_sweep_for_N, [(N, grid, kind) for N in grid.Ns()], workers)
    rep.elapsed = time.perf_counter() - t0
    return rep


def mixed_criteria(N: int, frame: PopulationFrame, eps_r_list):
    """Mixed criteria whose breakpoint ``N eps_a/eps_r`` lands inside, next to, on, or outside the frame."""
    L, U = frame.L, frame.U
    targets = {
        Fraction(2 * L + 1, 2),
        Fraction(L + U, 2),
        Fraction(2 * U - 1, 2),
        Fraction(L),
        Fraction(U),
        Fraction(L + 1),
        Fraction(U - 1),
        Fraction(L - 1),
        Fraction(U + 1),
    }
    out = []
    for er in eps_r_list:
        for x in sorted(targets):
            ea = er * x / N
            if x > 0 and 0 < ea < 1:
                out.append(ErrorCriterion.mixed(ea, er))
    return out


def _mixed_for_N(N: int, grid: GridSpec) -> VerificationReport:
    rep = VerificationReport()
    frames = grid.frames(N)
    with _Group(rep, "candidates_mixed", N=N):
        for n in grid.sample_sizes(N):
            for frame in frames:
                for crit in mixed_criteria(N, frame, grid.eps_list):
                    _compare_frames(rep, "mixed", N, n, crit, [frame])
    return rep


def check_mixed_sweep(grid: GridSpec, workers: int = 1) -> VerificationReport:
    """Mixed-criterion candidate minimum equals the full scan, fallbacks included.

    ``grid.eps_list`` supplies the relative radii; absolute radii are chosen
    per frame by :func:`mixed_criteria`.
    """
    t0 = time.perf_counter()
    rep = _run(_mixed_for_N, [(N, grid) for N in grid.Ns()], workers)
    rep.elapsed = time.perf_counter() - t0
    return rep


def _economy_for_N(N: int, n_max: int, eps_list) -> VerificationReport:
    rep = VerificationReport()
    frame = PopulationFrame(N, 0, -(-N // 2))
    crit = ErrorCriterion.absolute(eps_list[N % len(eps_list)])
    worst = 0
    for n in range(1, min(n_max, N) + 1):
        points, _ = evaluation_points(n, frame, crit)
        used = sum(1 for M, _ in points if _known_value(M, N, crit) is None)
        worst = max(worst, used - n)
        rep.record(("economy", N, n, crit.eps, used), True, used <= n + 2)
    rep.groups.append({
        "check": "candidate_economy",
        "N": N,
        "eps": str(crit.eps),
        "instances": min(n_max, N),
        "max_excess_over_n": worst,
        "full_scan_evaluations": frame.U + 1,
        "failures": len(rep.failures),
    })
    return rep


def check_candidate_economy(N_values, n_max: int = 200, eps_list=DEFAULT_EPS, workers: int = 1) -> VerificationReport:
    """Coverage evaluations per ``n`` on frame ``[0, ceil(N/2)]`` stay at or below ``n + 2``.

    Known values (``M = 0`` and ``M = N``) are not counted. The radius cycles
    through ``eps_list`` with ``N``. Each group row records the largest
    ``evaluations - n`` seen for that ``N`` next to the ``ceil(N/2) + 1``
    evaluations a full scan would need.
    """
    t0 = time.perf_counter()
    rep = _run(_economy_for_N, [(N, n_max, tuple(eps_list)) for N in N_values], workers)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# simulation

_BLOCK_CELLS = 1 << 20


def monte_carlo_coverage(n: int, M: int, N: int, crit: ErrorCriterion, trials: int, seed: int):
    """Simulate the estimation experiment and return ``(estimate, stderr)``.

    Each trial draws a uniform size-``n`` subset of ``N`` labelled units,
    counts how many of the first ``M`` labels it contains, and tests the
    criterion for that count. Trials are grouped in blocks whose size depends
    only on ``N``; block ``b`` draws from a Philox counter-based generator
    keyed by ``(seed, b)``, so the outcome of trial ``t`` is fixed by
    ``(seed, t)`` alone.

    ``estimate`` is an exact :class:`Fraction`. ``stderr`` is the binomial
    standard error, computed in floating point and returned as the exactly
    equal :class:`Fraction`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= n <= N or not 0 <= M <= N:
        raise ValueError(f"need 1 <= n <= N and 0 <= M <= N, got n={n}, M={M}, N={N}")
    accept = np.array([event_holds(k, n, M, N, crit) for k in range(n + 1)])
    rows = max(1, min(4096, _BLOCK_CELLS // N))
    hits = 0
    for b, start in enumerate(range(0, trials, rows)):
        size = min(rows, trials - start)
        rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), b]))
        keys = rng.random((rows, N))[:size]
        chosen = np.argpartition(keys, n - 1, axis=1)[:, :n] if n < N else None
        k = (chosen < M).sum(axis=1) if chosen is not None else np.full(size, M)
        hits += int(accept[k].sum())
    est = Fraction(hits, trials)
    p = hits / trials
    return est, Fraction(math.sqrt(p * (1 - p) / trials))


# ---------------------------------------------------------------------------
# tiers

TIERS = {
    "smoke": {"lemma_N": 8, "window_N": 8, "sweep_N": (2, 12), "mixed_N": (2, 10)},
    FAST: {"lemma_N": 20, "window_N": 16, "sweep_N": (2, 40), "mixed_N": (2, 24)},
    SLOW: {"lemma_N": 40, "window_N": 30, "sweep_N": (2, 60), "mixed_N": (2, 40)},
}


def run_verification(tier: str = FAST, seed: int = 0, workers: int = 1) -> VerificationReport:
    """Run every check at the given tier; the report depends only on ``(tier, seed)``."""
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    cfg = TIERS[tier]
    t0 = time.perf_counter()
    rep = VerificationReport()
    rep.merge(check_lemma_suite(cfg["lemma_N"], workers))
    rep.merge(check_window_consistency(cfg["window_N"], workers=workers))
    grid = GridSpec(N_range=cfg["sweep_N"], seed=seed)
    rep.merge(check_candidate_sweep(grid, "absolute", workers))
    rep.merge(check_candidate_sweep(grid, "relative", workers))
    mgrid = GridSpec(N_range=cfg["mixed_N"], seed=seed, eps_list=(Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)), count=3)
    rep.merge(check_mixed_sweep(mgrid, workers))
    rep.elapsed = time.perf_counter() - t0
    return rep
