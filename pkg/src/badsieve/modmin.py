"""Exact minimization of affine maps modulo an integer.

Everything the record enumerator needs about the one-dimensional problem
"how close does (a*x + c) mod m get to 0 for x in a range" reduces to three
integer queries, each answered without scanning x:

  first_reaching(a, c, m, s)      minimal x >= 0 with (a*x + c) % m <= s
  min_affine_prefix(a, c, m, n)   min and argmin of (a*x + c) % m on [0, n]
  congruence_solutions_in_range   count / min-|x| of (a*x + c) % m == v on [-T, T]

first_reaching runs a Euclidean descent: the modulus at least halves per
step, so the cost is O(log m) big-integer operations regardless of how wild
the continued fraction of a/m is. That property is what keeps Liouville-type
coefficients tractable.
"""

from __future__ import annotations

from math import gcd


def first_reaching(a: int, c: int, m: int, s: int):
    """Smallest x >= 0 with (a*x + c) % m <= s, or None if no x works.

    s may be any integer; s < 0 always returns None, s >= m - 1 returns 0.
    """
    if m <= 0:
        raise ValueError("modulus must be positive")
    if s < 0:
        return None
    a %= m
    c %= m
    stack = []
    res = None
    while True:
        if c <= s:
            res = 0
            break
        if a == 0:
            break
        # Now 0 <= s < c < m. Want minimal x >= 1 with (a*x) % m in [lo, hi].
        lo = m - c
        hi = m - c + s
        if 2 * a > m:
            # reflect: (a*x) % m in [lo, hi]  <=>  ((m-a)*x) % m in [m-hi, m-lo]
            a = m - a
            lo, hi = m - hi, m - lo
        x0 = (lo + a - 1) // a
        if a * x0 <= hi:
            res = x0
            break
        # No multiple of a lands in [lo, hi] before the first wrap. Count wraps:
        # need minimal k >= 0 with a multiple of a inside [m*k + lo, m*k + hi],
        # i.e. (-(m*k + lo)) % a <= hi - lo. Same problem one size down.
        stack.append((m, a, lo))
        a, c, m, s = (-m) % a, (-lo) % a, a, hi - lo
    if res is None:
        return None
    while stack:
        m, a, lo = stack.pop()
        res = (m * res + lo + a - 1) // a
    return res


def min_affine_prefix(a: int, c: int, m: int, n: int) -> tuple[int, int]:
    """(value, x): minimum of (a*x + c) % m over 0 <= x <= n and the smallest
    x attaining it. n >= 0 required."""
    if n < 0:
        raise ValueError("empty range")
    a %= m
    c %= m
    lo_s, hi_s = 0, c  # x = 0 attains c, so the min is <= c
    while lo_s < hi_s:
        mid = (lo_s + hi_s) // 2
        x = first_reaching(a, c, m, mid)
        if x is not None and x <= n:
            hi_s = mid
        else:
            lo_s = mid + 1
    return lo_s, first_reaching(a, c, m, lo_s)


def congruence_solutions_in_range(a: int, c: int, v: int, m: int, T: int):
    """(count, x_best) for (a*x + c) % m == v over x in [-T, T].

    x_best is the solution of smallest |x| (positive preferred on a tie),
    or None when count == 0.
    """
    if T < 0:
        return 0, None
    g = gcd(a % m, m)
    r = (v - c) % m
    if r % g:
        return 0, None
    mp = m // g
    if mp == 1:
        x0 = 0
    else:
        x0 = (r // g) * pow((a % m) // g, -1, mp) % mp
    # solutions are x = x0 + k*mp; k range for [-T, T]:
    lo_k = -((T + x0) // mp)
    hi_k = (T - x0) // mp
    if lo_k > hi_k:
        return 0, None
    count = hi_k - lo_k + 1
    best = None
    k_near = (-x0) // mp
    for k in (k_near, k_near + 1):
        k = min(max(k, lo_k), hi_k)
        x = x0 + k * mp
        key = (abs(x), 0 if x >= 0 else 1)
        if best is None or key < best[0]:
            best = (key, x)
    return count, best[1]
