from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from badsieve.modmin import (
    congruence_solutions_in_range,
    first_reaching,
    min_affine_prefix,
)


def brute_first_reaching(a, c, m, s, limit=20000):
    if s < 0:
        return None
    for x in range(limit):
        if (a * x + c) % m <= s:
            return x
    return None


def brute_min_prefix(a, c, m, n):
    vals = [((a * x + c) % m, x) for x in range(n + 1)]
    return min(vals)


def test_first_reaching_small_exhaustive():
    # every (a, c, m, s) with m <= 13: compare against a plain scan
    for m in range(1, 14):
        for a in range(m):
            for c in range(m):
                for s in range(-1, m + 1):
                    got = first_reaching(a, c, m, s)
                    want = brute_first_reaching(a, c, m, s, limit=3 * m + 2)
                    assert got == want, (a, c, m, s)


@settings(max_examples=300, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=10**6),
    a=st.integers(min_value=0, max_value=10**6),
    c=st.integers(min_value=0, max_value=10**6),
    s=st.integers(min_value=-2, max_value=10**6),
)
def test_first_reaching_matches_scan(m, a, c, s):
    got = first_reaching(a, c, m, s)
    want = brute_first_reaching(a, c, m, s)
    if want is not None:
        assert got == want
    elif got is not None:
        # scan gave up early; the claimed x must at least satisfy the predicate
        # and nothing below the scan horizon may satisfy it
        assert (a * got + c) % m <= s
        assert got >= 20000


@settings(max_examples=200, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=10**9),
    a=st.integers(min_value=0, max_value=10**9),
    c=st.integers(min_value=0, max_value=10**9),
    s=st.integers(min_value=0, max_value=10**9),
)
def test_first_reaching_is_minimal_witness(m, a, c, s):
    x = first_reaching(a, c, m, s)
    if x is None:
        # no witness below a generous horizon either
        assert brute_first_reaching(a, c, m, s, limit=2000) is None
    else:
        assert (a * x + c) % m <= s
        if x > 0:
            # spot-check minimality just below x without a full scan
            for probe in range(max(0, x - 50), x):
                assert (a * probe + c) % m > s


def test_first_reaching_huge_modulus():
    # shift by one step so x = 0 is not a trivial witness: search x >= 1
    m = 10**51
    a = 414213562373095048801688724209698078569671875376948
    u = first_reaching(a, a % m, m, 10**40)
    assert u is not None
    x = u + 1
    assert x > 1
    assert (a * x) % m <= 10**40
    for probe in range(1, 500):
        assert (a * probe) % m > 10**40


@settings(max_examples=200, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=10**5),
    a=st.integers(min_value=0, max_value=10**5),
    c=st.integers(min_value=0, max_value=10**5),
    n=st.integers(min_value=0, max_value=400),
)
def test_min_affine_prefix(m, a, c, n):
    val, x = min_affine_prefix(a, c, m, n)
    bval, bx = brute_min_prefix(a, c, m, n)
    assert (val, x) == (bval, bx)


@settings(max_examples=300, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=3000),
    a=st.integers(min_value=0, max_value=3000),
    c=st.integers(min_value=0, max_value=3000),
    v=st.integers(min_value=0, max_value=3000),
    T=st.integers(min_value=0, max_value=120),
)
def test_congruence_solutions(m, a, c, v, T):
    v %= m
    sols = [x for x in range(-T, T + 1) if (a * x + c) % m == v]
    count, best = congruence_solutions_in_range(a, c, v, m, T)
    assert count == len(sols)
    if sols:
        want = min(sols, key=lambda x: (abs(x), 0 if x >= 0 else 1))
        assert best == want
    else:
        assert best is None


def test_congruence_degenerate_modulus_one_step():
    # a multiple of m: constant map
    count, best = congruence_solutions_in_range(10, 3, 3, 5, 4)
    assert count == 9 and best == 0
    count, best = congruence_solutions_in_range(10, 3, 4, 5, 4)
    assert count == 0 and best is None


@pytest.mark.parametrize(
    "a,c,m,s,expect",
    [
        (3, 2, 10, 1, 3),
        (4, 3, 10, 0, None),
        (6, 5, 10, 1, 1),
        (0, 7, 9, 6, None),
        (0, 5, 9, 5, 0),
        (1, 0, 1, 0, 0),
    ],
)
def test_first_reaching_pinned(a, c, m, s, expect):
    assert first_reaching(a, c, m, s) == expect
