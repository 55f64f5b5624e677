"""Quality, hit test, K_eps and the approximation/power gains."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import DEFAULT_RHO_BUDGET, FactorizationBudgetExceeded, factorize, log_big
from .equations import AbcTriple, ResultingEquation, normalize_to_abc

__all__ = [
    "GainUndefined",
    "RadicalInfo",
    "MetricsRecord",
    "triple_radical",
    "equation_radical",
    "quality",
    "is_hit",
    "k_epsilon",
    "approximation_gain",
    "power_gain",
    "triple_metrics",
    "equation_metrics",
]

FLAG_FACTORIZATION_SKIPPED = "factorization-skipped"


class GainUndefined(ArithmeticError):
    pass


@dataclass(frozen=True)
class RadicalInfo:
    """A radical, or an upper bound for it when factoring ran out of budget."""

    value: int
    exact: bool = True


@lru_cache(maxsize=4096)
def _prime_parts(x: int, budget: int) -> tuple[frozenset[int], tuple[int, ...]]:
    """Distinct primes of x plus any composite cofactors left unsplit."""
    try:
        return frozenset(factorize(x, budget).primes), ()
    except FactorizationBudgetExceeded as exc:
        return frozenset(exc.factors), tuple(exc.cofactors)


def _radical_of_parts(parts, budget: int, divides=None) -> RadicalInfo:
    primes: set[int] = set()
    leftovers: list[int] = []
    for x in parts:
        ps, rest = _prime_parts(x, budget)
        primes |= ps
        leftovers.extend(rest)
    if divides is not None:
        primes = {p for p in primes if divides(p)}
    # unsplit cofactors are bounded by themselves; drop duplicates
    return RadicalInfo(math.prod(primes) * math.prod(set(leftovers)), not leftovers)


def triple_radical(t: AbcTriple, budget: int = DEFAULT_RHO_BUDGET) -> RadicalInfo:
    return _radical_of_parts((t.a, t.b, t.c), budget)


def equation_radical(eq: ResultingEquation, budget: int = DEFAULT_RHO_BUDGET) -> RadicalInfo:
    """rad(abc) of the normalized triple, factoring p, q, k, |d| instead of abc."""
    a, b, c = normalize_to_abc(eq)
    return _radical_of_parts(
        (eq.p, eq.q, eq.k, abs(eq.d)),
        budget,
        divides=lambda r: a % r == 0 or b % r == 0 or c % r == 0,
    )


def _rad(t: AbcTriple, rad: int | RadicalInfo | None) -> int:
    if rad is None:
        return triple_radical(t).value
    return rad.value if isinstance(rad, RadicalInfo) else rad


def quality(t: AbcTriple, rad: int | RadicalInfo | None = None) -> float:
    """ln c / ln rad(abc)."""
    r = _rad(t, rad)
    if r < 2:
        raise ValueError("quality needs rad(abc) >= 2")
    return log_big(t.c) / log_big(r)


def is_hit(t: AbcTriple, rad: int | RadicalInfo | None = None) -> bool:
    return _rad(t, rad) < t.c


def k_epsilon(t: AbcTriple, eps, rad: int | RadicalInfo | None = None) -> float:
    """Smallest K with c <= K rad(abc)^(1+eps) for this triple."""
    r = _rad(t, rad)
    return math.exp(log_big(t.c) - (1 + float(eps)) * log_big(r))


def approximation_gain(eq: ResultingEquation) -> float:
    """ln(k q^s) / ln(|d| q k p) when d > 0, ln(p^s) / ln(|d| q k p) when d < 0."""
    denom = eq.defect_product
    if denom < 2:
        raise GainUndefined(f"gain undefined for {eq}: |d| q k p = {denom}")
    num = eq.kq_power if eq.d > 0 else eq.p_power
    return log_big(num) / log_big(denom)


def power_gain(eq: ResultingEquation, budget: int = DEFAULT_RHO_BUDGET) -> float:
    """ln(|d| q k p) / ln rad(|d| q k p)."""
    n = eq.defect_product
    if n < 2:
        raise GainUndefined(f"power gain undefined for {eq}")
    info = _radical_of_parts((eq.p, eq.q, eq.k, abs(eq.d)), budget)
    return log_big(n) / log_big(info.value)


@dataclass
class MetricsRecord:
    triple: AbcTriple
    rad_abc: int
    quality: float
    is_hit: bool
    k_epsilon: dict[Fraction, float] = field(default_factory=dict)
    approximation_gain: float | None = None
    power_gain: float | None = None
    flags: list[str] = field(default_factory=list)


def triple_metrics(t: AbcTriple, eps_values=(), budget: int = DEFAULT_RHO_BUDGET) -> MetricsRecord:
    info = triple_radical(t, budget)
    return MetricsRecord(
        triple=t,
        rad_abc=info.value,
        quality=quality(t, info),
        is_hit=is_hit(t, info),
        k_epsilon={Fraction(e): k_epsilon(t, e, info) for e in eps_values},
        flags=[] if info.exact else [FLAG_FACTORIZATION_SKIPPED],
    )


def equation_metrics(
    eq: ResultingEquation, eps_values=(), budget: int = DEFAULT_RHO_BUDGET
) -> MetricsRecord:
    """Metrics of the normalized triple plus both gains of the equation.

    If factoring gives up, rad values are upper bounds: quality and power gain
    are then lower bounds and the record is flagged.
    """
    t = normalize_to_abc(eq)
    info = equation_radical(eq, budget)
    rec = MetricsRecord(
        triple=t,
        rad_abc=info.value,
        quality=quality(t, info),
        is_hit=is_hit(t, info),
        k_epsilon={Fraction(e): k_epsilon(t, e, info) for e in eps_values},
        approximation_gain=approximation_gain(eq),
        power_gain=power_gain(eq, budget),
    )
    if not info.exact:
        rec.flags.append(FLAG_FACTORIZATION_SKIPPED)
    return rec
