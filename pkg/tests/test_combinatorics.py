from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from exactsize.combinatorics import HyperParams, S, T, binom, hyper_pmf, tail_numerator


def enumerate_pmf(N, M, n, i):
    """Count size-n subsets of range(N) holding exactly i of the first M units."""
    hits = total = 0
    for sample in combinations(range(N), n):
        total += 1
        hits += sum(u < M for u in sample) == i
    return Fraction(hits, total)


def test_binom_examples():
    assert binom(5, 2) == 10
    assert binom(5, -1) == 0
    assert binom(5, 6) == 0
    assert binom(0, 0) == 1


def test_binom_rejects_negative_top():
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_pascal_identity():
    for m in range(65):
        for z in range(-2, m + 3):
            assert binom(m + 1, z + 1) == binom(m, z) + binom(m, z + 1)


def test_hyper_pmf_examples():
    assert hyper_pmf(HyperParams(4, 2, 2), 1) == Fraction(2, 3)
    assert hyper_pmf(HyperParams(10, 0, 3), 0) == 1
    assert hyper_pmf(HyperParams(10, 0, 3), 1) == 0


@pytest.mark.parametrize("N,M,n", [(4, 2, 2), (6, 3, 3), (7, 2, 4), (8, 5, 3)])
def test_hyper_pmf_matches_enumeration(N, M, n):
    for i in range(-1, n + 2):
        assert hyper_pmf(HyperParams(N, M, n), i) == enumerate_pmf(N, M, n, i)


def test_hyper_params_validation():
    with pytest.raises(ValueError):
        HyperParams(5, 6, 2)
    with pytest.raises(ValueError):
        HyperParams(5, 2, 0)


def test_pmf_normalizes():
    for N in range(1, 41):
        for M in range(N + 1):
            for n in range(1, N + 1):
                p = HyperParams(N, M, n)
                assert sum(hyper_pmf(p, i) for i in range(n + 1)) == 1


def test_S_examples():
    assert S(2, 1, 1, 2, 4) == Fraction(2, 3)
    assert S(3, 2, 1, 5, 10) == 0
    for N, M, n in [(1, 0, 1), (10, 4, 7), (25, 25, 3)]:
        assert S(n, 0, n, M, N) == 1


def test_S_matches_termwise_sum():
    # the ratio recurrence inside tail_numerator against direct binomials
    for N in range(1, 19):
        for n in range(1, N + 1):
            for M in range(N + 1):
                for k in range(-1, n + 2):
                    for l in range(k - 1, n + 2):
                        direct = sum(binom(M, i) * binom(N - M, n - i) for i in range(k, l + 1))
                        assert tail_numerator(n, k, l, M, N) == direct


def test_T_examples():
    assert T(0, 0, 10, 3) == Fraction(3, 10)
    assert T(5, 3, 10, 4) == 0


def test_T_requires_M_below_N():
    with pytest.raises(ValueError):
        T(0, 5, 5, 2)


def test_unit_shift_difference_spot_value():
    # hand value: (55 - 35) / 70 on the left, 2 * 10 / 70 on the right
    assert S(4, 0, 1, 2, 8) - S(4, 0, 1, 3, 8) == Fraction(2, 7) == T(1, 2, 8, 4)


def test_unit_shift_difference_small_grid():
    for N in range(1, 31):
        for M in range(N):
            for n in range(1, N + 1):
                for k in range(-1, n + 2):
                    assert S(n, 0, k, M, N) - S(n, 0, k, M + 1, N) == T(k, M, N, n)


@st.composite
def params(draw):
    N = draw(st.integers(2, 30))
    n = draw(st.integers(1, N))
    M = draw(st.integers(1, N))
    k = draw(st.integers(-1, n + 1))
    l = draw(st.integers(k, n + 1))
    return N, n, M, k, l


@given(params())
def test_two_sided_shift_difference(p):
    N, n, M, k, l = p
    assert S(n, k, l, M, N) - S(n, k, l, M - 1, N) == T(k - 1, M - 1, N, n) - T(l, M - 1, N, n)


@given(params())
def test_tail_monotonicity(p):
    N, n, M, k, l = p
    lower = [S(n, -1, l, m, N) for m in range(N + 1)]
    upper = [S(n, k, n + 1, m, N) for m in range(N + 1)]
    if l < n:
        assert all(a >= b for a, b in zip(lower, lower[1:]))
    if k > 0:
        assert all(a <= b for a, b in zip(upper, upper[1:]))


def test_large_population_against_scipy():
    stats = pytest.importorskip("scipy.stats")
    N, n, M = 10**6, 500, 500_000
    v = S(n, 240, 260, M, N)
    assert isinstance(v, Fraction)
    rv = stats.hypergeom(N, M, n)
    assert float(v) == pytest.approx(rv.cdf(260) - rv.cdf(239), rel=1e-9)
