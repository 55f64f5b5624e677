from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abcroth.bounds import (
    FLAG_DISCREPANCY,
    BoundUndefined,
    ExplicitAbcParams,
    RidoutQuery,
    RothBoundParams,
    eps_abc_from_roth,
    eps_roth_from_abc,
    explicit_power_gain_bound,
    first_upper_convergent,
    inverse_c_bound,
    ridout_cbrt_bound,
    ridout_sqrt_bound,
    ridout_sqrt_solutions,
    roth_table,
)
from abcroth.cf import RootSpec

CBRT2 = RootSpec(2, 3)
SQRT2 = RootSpec(2, 2)


@pytest.mark.parametrize(
    "eps_abc, eps_roth",
    [(Fraction(1, 5), Fraction(1, 2)), (Fraction(2, 13), Fraction(2, 5)), (0, 0), (Fraction(1, 2), 1)],
)
def test_eps_mapping(eps_abc, eps_roth):
    assert eps_roth_from_abc(eps_abc) == eps_roth
    assert eps_abc_from_roth(eps_roth) == eps_abc


@given(st.fractions(min_value=0, max_value=Fraction(1, 2), max_denominator=10**6))
def test_eps_mapping_roundtrip(e):
    assert eps_abc_from_roth(eps_roth_from_abc(e)) == e


def test_first_upper_convergent():
    assert first_upper_convergent(CBRT2) == Fraction(4, 3)


@pytest.mark.parametrize(
    "eps, K, expected",
    [(Fraction(1, 5), 2.16, 13.16), (Fraction(2, 13), 2.527, 15.03), (Fraction(1, 2), 0.78, 6.78)],
)
def test_inverse_c_bound_published(eps, K, expected):
    assert inverse_c_bound(RothBoundParams(CBRT2, eps, K, Fraction(4, 3))) == pytest.approx(expected, abs=0.02)


def test_inverse_c_bound_eps_zero():
    assert inverse_c_bound(RothBoundParams(CBRT2, 0, 128 / 30, Fraction(4, 3))) == pytest.approx(25.6, rel=1e-12)


def test_inverse_c_bound_monotone():
    grid = [0.5, 1, 2, 4, 8]
    for eps in (Fraction(0), Fraction(1, 5), Fraction(1, 2)):
        vals = [inverse_c_bound(RothBoundParams(CBRT2, eps, K, Fraction(4, 3))) for K in grid]
        assert vals == sorted(vals)
        vals = [
            inverse_c_bound(RothBoundParams(RootSpec(k, 3), eps, 2.0, first_upper_convergent(RootSpec(k, 3))))
            for k in (2, 3, 4, 5, 6, 7)
        ]
        assert vals == sorted(vals)


@pytest.mark.parametrize(
    "kwargs",
    [dict(root=RootSpec(2, 2), eps_abc=0, K_eps=1, p1_over_q1=Fraction(3, 2)),
     dict(root=CBRT2, eps_abc=1, K_eps=1, p1_over_q1=Fraction(4, 3)),
     dict(root=CBRT2, eps_abc=0, K_eps=1, p1_over_q1=Fraction(5, 4))],
)
def test_roth_params_validation(kwargs):
    with pytest.raises(ValueError):
        RothBoundParams(**kwargs)


def test_roth_table_fixed_source_reproduces_published_rows():
    rows = roth_table(CBRT2, [Fraction(1, 2), 1, 0, Fraction(2, 5)], source=2)
    half, one, zero, two_fifths = rows
    assert (half.eps_abc, half.K_eps, half.bound) == (Fraction(1, 5), pytest.approx(2.161, abs=1e-3), pytest.approx(13.16, abs=0.02))
    assert (one.eps_abc, one.K_eps, one.bound) == (Fraction(1, 2), pytest.approx(0.78, abs=0.01), pytest.approx(6.78, abs=0.02))
    assert two_fifths.bound == pytest.approx(15.03, abs=0.02)
    assert zero.K_eps == pytest.approx(4.267, abs=1e-3)
    assert zero.bound == pytest.approx(25.60, abs=0.02)
    assert zero.flags == [FLAG_DISCREPANCY]
    assert all(r.source_equation == "128 = 125 + 3" for r in rows)
    assert not any(r.flags for r in (half, one, two_fifths))


def test_roth_table_max_policy():
    rows = {r.eps_roth: r for r in roth_table(CBRT2, [0, Fraction(1, 2), 1], terms=10)}
    # large eps: 128 = 125 + 3 dominates the first ten equations
    assert rows[Fraction(1)].source_equation == "128 = 125 + 3"
    # at eps_abc = 1/5 the 63/50 equation gives the larger constant
    assert rows[Fraction(1, 2)].source_n == 5
    assert rows[Fraction(1, 2)].K_eps == pytest.approx(float(mpmath.mpf(250047) / mpmath.power(9870, 1.2)), rel=1e-10)
    seeded = roth_table(CBRT2, [1], terms=10, include_seed=True)[0]
    assert seeded.source_equation == "128 = 125 + 3"


@pytest.mark.parametrize(
    "primes, bound, sols",
    [((2,), 16, ["3/2"]), ((3,), 36, []), ((5,), 100, ["7/5"]), ((2, 3), 144, ["3/2", "17/12"])],
)
def test_ridout_sqrt_table(primes, bound, sols):
    q = RidoutQuery(SQRT2, primes, 1, 1, depth=40)
    assert ridout_sqrt_bound(q) == bound
    assert [str(c) for c in ridout_sqrt_solutions(q)] == sols


@pytest.mark.parametrize("k", [2, 3, 5, 6, 7, 10])
@pytest.mark.parametrize("primes", [(2,), (3,), (2, 3), (2, 5, 7)])
def test_ridout_sqrt_eps_one_is_square(k, primes):
    q = RidoutQuery(RootSpec(k, 2), primes, 1, 1)
    rad = 1
    for p in primes:
        rad *= p
    assert ridout_sqrt_bound(q) == (rad * k) ** 2


def test_ridout_sqrt_fractional_eps():
    q = RidoutQuery(SQRT2, (2,), Fraction(1, 2), 1.5)
    expected = (1.5 * 4**1.5) ** 0.75
    assert ridout_sqrt_bound(q) == pytest.approx(expected, rel=1e-12)


def _cbrt_oracle(K, rad, k, eps, p1q1):
    with mpmath.workdps(40):
        e1 = 1 + mpmath.mpf(eps)
        inner = K * mpmath.power(rad, e1) * mpmath.power(k, 2 * e1) * mpmath.power(p1q1, e1)
        return float(mpmath.power(inner, 2 * e1 / 3))


def test_ridout_cbrt_bound():
    q = RidoutQuery(CBRT2, (2,), 1, 1)
    # (1024/9)^(4/3)
    assert ridout_cbrt_bound(q, Fraction(4, 3)) == pytest.approx(_cbrt_oracle(1, 2, 2, 1, mpmath.mpf(4) / 3), rel=1e-12)
    assert ridout_cbrt_bound(q) == pytest.approx(551.3278, abs=1e-3)
    q0 = RidoutQuery(CBRT2, (2,), 0, 1)
    assert ridout_cbrt_bound(q0, Fraction(4, 3)) == pytest.approx(4.8457, abs=1e-4)
    assert ridout_cbrt_bound(RidoutQuery(CBRT2, (2,), 1, 0)) == 0


def test_ridout_query_validation():
    with pytest.raises(ValueError):
        RidoutQuery(SQRT2, (), 1, 1)
    with pytest.raises(ValueError):
        ridout_sqrt_bound(RidoutQuery(CBRT2, (2,), 1, 1))
    with pytest.raises(ValueError):
        ridout_cbrt_bound(RidoutQuery(SQRT2, (2,), 1, 1))


def test_explicit_power_gain_bound():
    assert explicit_power_gain_bound(2, 5, ExplicitAbcParams(1, 0)) == pytest.approx(
        float(mpmath.log(500) / mpmath.log(5)), rel=1e-12
    )
    assert explicit_power_gain_bound(2, 5, ExplicitAbcParams(1, 1)) == pytest.approx(5.1485, abs=1e-4)
    # with L = 1, eps = 0 the value is 3 + 6 ln k / ln p^3, tending to 3
    big = 10**300
    assert explicit_power_gain_bound(2, big, ExplicitAbcParams(1, 0)) == pytest.approx(
        float(3 + 6 * mpmath.log(2) / mpmath.log(mpmath.mpf(big) ** 3)), rel=1e-12
    )
    with pytest.raises(BoundUndefined):
        explicit_power_gain_bound(2, 5, ExplicitAbcParams(125, 0))
    with pytest.raises(ValueError):
        ExplicitAbcParams(0)
