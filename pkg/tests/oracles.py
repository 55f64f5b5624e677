"""Independent reference computations used to freeze and cross-check expected values.

None of these share code with the package under test.
"""

import math

import mpmath


def trial_factor(x):
    out = []
    p = 2
    while p * p <= x:
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if x > 1:
        out.append((x, 1))
    return out


def bisect_root(x, s):
    lo, hi = 0, 1
    while hi**s <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**s <= x:
            lo = mid
        else:
            hi = mid
    return lo


def surd_cf(k, terms):
    """Partial quotients of sqrt(k) via the exact (P, Q) recurrence."""
    a0 = math.isqrt(k)
    out = [a0]
    P, Q, a = 0, 1, a0
    while len(out) < terms:
        P = a * Q - P
        Q = (k - P * P) // Q
        a = (a0 + P) // Q
        out.append(a)
    return out


def mp_root_cf(k, s, terms, dps=400):
    """Partial quotients from a high-precision float expansion (no certification)."""
    with mpmath.workdps(dps):
        x = mpmath.root(k, s)
        out = []
        for _ in range(terms):
            a = int(mpmath.floor(x))
            out.append(a)
            x = 1 / (x - a)
        return out


def mp_log_ratio(num, den, dps=60):
    with mpmath.workdps(dps):
        return float(mpmath.log(num) / mpmath.log(den))
