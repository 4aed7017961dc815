import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactsize.candidates import (
    BREAKPOINT,
    ENDPOINT,
    MixedPreconditionError,
    absolute_family_ranges,
    candidate_set,
    candidate_set_absolute,
    candidate_set_mixed,
    candidate_set_relative,
    reflect_frame,
    relative_family_ranges,
)
from exactsize.coverage import ErrorCriterion, PopulationFrame, coverage
from exactsize.oracle import full_scan_min

F = Fraction


def floor_q(x):
    return math.floor(x)


def ceil_q(x):
    return math.ceil(x)


def brute_absolute(frame, n, eps):
    """Endpoints plus every family value in (L, U), found by scanning a generous k range."""
    N, L, U = frame.N, frame.L, frame.U
    out = {L, U}
    for k in range(-2 * n - 5, 2 * n + 6):
        for v in (floor_q(N * (F(k, n) - eps)), ceil_q(N * (F(k, n) + eps))):
            if L < v < U:
                out.add(v)
    return sorted(out)


def brute_relative(frame, n, eps):
    N, L, U = frame.N, frame.L, frame.U
    out = {L, U}
    for k in range(-2 * n - 5, 3 * n + 6):
        for v in (floor_q(F(N * k) / ((1 + eps) * n)), ceil_q(F(N * k) / ((1 - eps) * n))):
            if L < v < U:
                out.add(v)
    return sorted(out)


def test_absolute_hand_example():
    cs = candidate_set_absolute(PopulationFrame(10, 0, 10), 4, F(1, 10))
    assert cs.members == (0, 1, 4, 6, 9, 10)
    assert cs.bound == F(56, 5)
    assert cs.provenance[0] == cs.provenance[10] == ENDPOINT


def test_relative_hand_example():
    cs = candidate_set_relative(PopulationFrame(10, 1, 9), 5, F(1, 2))
    assert cs.members == (1, 2, 4, 5, 6, 8, 9)


def test_degenerate_frame():
    fr = PopulationFrame(20, 7, 7)
    assert candidate_set_absolute(fr, 5, F(1, 10)).members == (7,)
    assert candidate_set_relative(fr, 5, F(1, 10)).members == (7,)


def test_mixed_breakpoint_members():
    N, er, B = 50, F(1, 4), 17
    cs = candidate_set_mixed(PopulationFrame(N, 5, 40), 12, er * B / N, er)
    assert B in cs and B + 1 in cs
    assert cs.provenance[B] == cs.provenance[B + 1] == BREAKPOINT


def test_mixed_precondition_enforced():
    fr = PopulationFrame(50, 10, 40)
    with pytest.raises(MixedPreconditionError) as exc:
        candidate_set_mixed(fr, 12, F(1, 100), F(1, 2))  # N ea/er = 1 < L
    assert "relative" in exc.value.fallback
    with pytest.raises(MixedPreconditionError):
        candidate_set_mixed(fr, 12, F(2, 5), F(1, 2))  # 40 == U, not strictly inside
    with pytest.raises(MixedPreconditionError):
        candidate_set_mixed(fr, 12, F(1, 10), F(1, 2))  # 10 == L
    cs = candidate_set(fr, 12, ErrorCriterion.mixed(F(1, 10), F(1, 2)))
    assert cs.note and {10, 11} <= set(cs.members)


def test_reflect_frame():
    assert reflect_frame(PopulationFrame(30, 0, 30)) == PopulationFrame(30, 0, 30)
    assert reflect_frame(PopulationFrame(100, 70, 90)) == PopulationFrame(100, 10, 30)


def test_reflected_minimum_equal():
    for N in range(2, 41):
        rng = random.Random(N)
        for _ in range(6):
            L = rng.randint(0, N)
            U = rng.randint(L, N)
            n = rng.randint(1, N)
            crit = ErrorCriterion.absolute(rng.choice([F(1, 20), F(1, 10), F(1, 4), F(9, 20)]))
            fr = PopulationFrame(N, L, U)
            assert full_scan_min(n, fr, crit)[1] == full_scan_min(n, reflect_frame(fr), crit)[1]


frames = st.integers(2, 70).flatmap(
    lambda N: st.tuples(st.just(N), st.integers(0, N)).flatmap(
        lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(t[1], t[0]), st.integers(1, t[0]))
    )
)
radii = st.fractions(min_value=F(1, 200), max_value=F(199, 200), max_denominator=200)


@given(frames, radii)
@settings(max_examples=300)
def test_absolute_families_complete(fr, eps):
    N, L, U, n = fr
    frame = PopulationFrame(N, L, U)
    assert list(candidate_set_absolute(frame, n, eps).members) == brute_absolute(frame, n, eps)


@given(frames, radii)
@settings(max_examples=300)
def test_relative_families_complete(fr, eps):
    N, L, U, n = fr
    frame = PopulationFrame(N, L, U)
    assert list(candidate_set_relative(frame, n, eps).members) == brute_relative(frame, n, eps)


@given(frames, radii)
def test_family_ranges_are_exact(fr, eps):
    # every k in the derived range lands inside (L, U); neighbours do not
    N, a, b, n = fr
    (k0, k1), (j0, j1) = absolute_family_ranges(N, n, eps, a, b)
    inside = lambda v: a < v < b  # noqa: E731
    fl = lambda k: floor_q(N * (F(k, n) - eps))  # noqa: E731
    cl = lambda j: ceil_q(N * (F(j, n) + eps))  # noqa: E731
    assert all(inside(fl(k)) for k in range(k0, k1 + 1))
    assert all(inside(cl(j)) for j in range(j0, j1 + 1))
    if k0 <= k1:
        assert not inside(fl(k0 - 1)) and not inside(fl(k1 + 1))
    if j0 <= j1:
        assert not inside(cl(j0 - 1)) and not inside(cl(j1 + 1))
    (k0, k1), (j0, j1) = relative_family_ranges(N, n, eps, a, b)
    rf = lambda k: floor_q(F(N * k) / ((1 + eps) * n))  # noqa: E731
    rc = lambda j: ceil_q(F(N * j) / ((1 - eps) * n))  # noqa: E731
    assert all(inside(rf(k)) for k in range(k0, k1 + 1))
    assert all(inside(rc(j)) for j in range(j0, j1 + 1))
    if k0 <= k1:
        assert not inside(rf(k0 - 1)) and not inside(rf(k1 + 1))
    if j0 <= j1:
        assert not inside(rc(j0 - 1)) and not inside(rc(j1 + 1))


@given(frames, radii)
def test_members_sorted_and_bounded(fr, eps):
    N, L, U, n = fr
    frame = PopulationFrame(N, L, U)
    for cs in (candidate_set_absolute(frame, n, eps), candidate_set_relative(frame, n, eps)):
        m = cs.members
        assert m[0] == L and m[-1] == U
        assert all(x < y for x, y in zip(m, m[1:]))
        assert cs.within_bound()


def test_interlacing_between_consecutive_members():
    for N in range(2, 36):
        for n in range(1, N + 1):
            for eps in (F(1, 20), F(1, 8), F(9, 20)):
                crit = ErrorCriterion.absolute(eps)
                row = [coverage(n, M, N, crit) for M in range(N + 1)]
                m = candidate_set_absolute(PopulationFrame(N, 0, N), n, eps).members
                for rho, tau in zip(m, m[1:]):
                    floor_v = min(row[rho], row[tau])
                    assert all(row[M] >= floor_v for M in range(rho, tau + 1))


def test_mixed_minimum_matches_full_scan():
    rng = random.Random(3)
    for N in range(4, 41):
        for _ in range(4):
            L = rng.randint(0, N - 2)
            U = rng.randint(L + 2, N)
            er = rng.choice([F(1, 10), F(1, 4), F(1, 2)])
            x = F(rng.randint(2 * L + 1, 2 * U - 1), 2)  # strictly inside (L, U)
            ea = er * x / N
            if not 0 < ea < 1:
                continue
            crit = ErrorCriterion.mixed(ea, er)
            fr = PopulationFrame(N, L, U)
            for n in range(1, N + 1):
                cs = candidate_set_mixed(fr, n, ea, er)
                assert cs.within_bound()
                assert min(coverage(n, M, N, crit) for M in cs) == full_scan_min(n, fr, crit)[1]
