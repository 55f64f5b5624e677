import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcroth.arith import (
    FactorizationBudgetExceeded,
    FactoredInteger,
    factorize,
    integer_nth_root,
    is_probable_prime,
    log_big,
    radical,
    radical_upper_bound,
)
from oracles import bisect_root, trial_factor


@pytest.mark.parametrize("x, s, r", [(8, 3, 2), (63, 3, 3), (0, 5, 0), (1, 7, 1), (10**6, 1, 10**6)])
def test_nth_root_small(x, s, r):
    assert integer_nth_root(x, s) == r


def test_nth_root_large_cube():
    x = 2 * 10**30
    r = integer_nth_root(x, 3)
    assert r**3 <= x < (r + 1) ** 3
    assert r == bisect_root(x, 3)


@settings(max_examples=400)
@given(st.integers(0, 2**512), st.integers(1, 12))
def test_nth_root_brackets(x, s):
    r = integer_nth_root(x, s)
    assert r**s <= x < (r + 1) ** s


@pytest.mark.parametrize("x", [2**1200 + 12345, 3**900, 7**700 - 1])
def test_nth_root_beyond_float_range(x):
    for s in (2, 3, 5):
        assert integer_nth_root(x, s) == bisect_root(x, s)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(296100).factors == tuple(trial_factor(296100))
    assert factorize(6436343).factors == ((23, 5),)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**12))
def test_factorize_matches_trial_division(x):
    assert list(factorize(x).factors) == trial_factor(x)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(2, 2**40), min_size=1, max_size=4))
def test_factorize_reconstructs(xs):
    x = math.prod(xs)
    f = factorize(x)
    assert math.prod(p**e for p, e in f.factors) == x
    assert all(is_probable_prime(p) for p in f.primes)
    assert list(f.primes) == sorted(set(f.primes))


def test_factorize_semiprime_with_large_factors():
    p, q = 2**61 - 1, 2**31 - 1
    assert factorize(p * q * 1000003**2).factors == ((1000003, 2), (q, 1), (p, 1))


def test_forty_bit_factor_needs_a_larger_budget():
    p, q = 2**61 - 1, 1000000000039
    with pytest.raises(FactorizationBudgetExceeded):
        factorize(p * q, budget=10_000)
    assert factorize(p * q, budget=10**8).factors == ((q, 1), (p, 1))


def test_probable_flag_above_64_bits():
    p = 2**89 - 1  # Mersenne prime
    f = factorize(3 * p)
    assert f.factors == ((3, 1), (p, 1))
    assert f.probable
    assert not factorize(2**61 - 1).probable


def test_budget_exceeded_keeps_partial_result():
    n = 1000000007 * 998244353
    with pytest.raises(FactorizationBudgetExceeded) as info:
        factorize(12 * n, budget=5)
    assert info.value.factors == {2: 2, 3: 1}
    assert info.value.cofactors == [n]
    bound, exact = radical_upper_bound(12 * n, budget=5)
    assert not exact and bound == 6 * n >= radical(12 * n)


def test_factored_integer_validates():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 2),))
    with pytest.raises(ValueError):
        FactoredInteger(12, ((3, 1), (2, 2)))


def test_radical_examples():
    assert radical(1) == 1
    assert radical(128 * 125 * 3) == 30
    assert radical(296100) == 9870


@settings(deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 47, 10007, 2**31 - 1]), st.integers(1, 30))
def test_radical_of_prime_power(p, e):
    assert radical(p**e) == p


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**10))
def test_radical_squarefree_divisor(x):
    r = radical(x)
    assert x % r == 0
    assert all(e == 1 for _, e in factorize(r).factors)


def test_log_big_examples():
    assert log_big(1) == 0.0
    assert log_big(6436343) == pytest.approx(15.6774710796457484, rel=1e-12)
    assert log_big(2**200) == pytest.approx(200 * math.log(2), rel=1e-15)
    assert log_big(10**4000) == pytest.approx(4000 * math.log(10), rel=1e-13)


@given(st.integers(1, 2**700), st.integers(1, 2**700))
def test_log_big_additive(x, y):
    lhs, rhs = log_big(x * y), log_big(x) + log_big(y)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)
