"""Explicit bound calculators: epsilon mapping, inverse Roth constant, Ridout-type bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import log_big
from .cf import Convergent, RootSpec, expand_convergents
from .equations import normalize_to_abc, resulting_equation
from .metrics import equation_radical, k_epsilon

__all__ = [
    "BoundUndefined",
    "RothBoundParams",
    "RidoutQuery",
    "ExplicitAbcParams",
    "RothTableRow",
    "eps_roth_from_abc",
    "eps_abc_from_roth",
    "first_upper_convergent",
    "inverse_c_bound",
    "roth_table",
    "ridout_sqrt_bound",
    "ridout_sqrt_solutions",
    "ridout_cbrt_bound",
    "explicit_power_gain_bound",
    "PUBLISHED_CBRT2_ROWS",
]

FLAG_DISCREPANCY = "paper-discrepancy"

# Published rows for cbrt(2): eps_roth -> (K_eps, bound on 1/C, known bound note)
PUBLISHED_CBRT2_ROWS = {
    Fraction(0): (4.267, 60.686, "probably unbounded"),
    Fraction(2, 5): (2.527, 15.03, "not known (hypergeometric method: 1e99 at exponent 2.4321)"),
    Fraction(1, 2): (2.161, 13.16, "3.125 (Korobov, exact)"),
    Fraction(1): (0.78, 6.78, "6 (Liouville; stated lowerable to 1.575, no derivation given)"),
}


class BoundUndefined(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def eps_roth_from_abc(eps_abc) -> Fraction:
    """3 e / (1 + e)."""
    e = _frac(eps_abc)
    if e < 0:
        raise ValueError("eps_abc must be >= 0")
    return 3 * e / (1 + e)


def eps_abc_from_roth(eps_roth) -> Fraction:
    """Inverse of eps_roth_from_abc: e_r / (3 - e_r)."""
    e = _frac(eps_roth)
    if not 0 <= e < 3:
        raise ValueError("eps_roth must lie in [0, 3)")
    return e / (3 - e)


def first_upper_convergent(root: RootSpec) -> Fraction:
    """p_1/q_1, the first convergent above the root; later ones are closer."""
    _, convs = expand_convergents(root, 2)
    return convs[1].value


@dataclass(frozen=True)
class RothBoundParams:
    root: RootSpec
    eps_abc: Fraction
    K_eps: float
    p1_over_q1: Fraction

    def __post_init__(self):
        if self.root.s != 3:
            raise ValueError("inverse Roth constant bound is for cube roots")
        object.__setattr__(self, "eps_abc", _frac(self.eps_abc))
        object.__setattr__(self, "p1_over_q1", _frac(self.p1_over_q1))
        if not 0 <= self.eps_abc <= Fraction(1, 2):
            raise ValueError("eps_abc must lie in [0, 1/2]")
        r = self.p1_over_q1
        if r.numerator**3 <= self.root.k * r.denominator**3:
            raise ValueError(f"{r} does not lie above {self.root}")

    @property
    def eps_roth(self) -> Fraction:
        return eps_roth_from_abc(self.eps_abc)


def inverse_c_bound(params: RothBoundParams) -> float:
    """K^(1/(1+e)) * 3k * (p1/q1)^(3e/(1+e)), with the gcd factor taken as 1."""
    e = params.eps_abc
    return (
        params.K_eps ** float(1 / (1 + e))
        * 3
        * params.root.k
        * float(params.p1_over_q1) ** float(3 * e / (1 + e))
    )


@dataclass
class RothTableRow:
    eps_roth: Fraction
    eps_abc: Fraction
    K_eps: float
    source_n: int
    source_equation: str
    bound: float
    known_bound: str = ""
    flags: list[str] = field(default_factory=list)


def roth_table(
    root: RootSpec,
    eps_roth_list,
    source: str | int = "max",
    terms: int = 10,
    include_seed: bool = False,
    p1_over_q1: Fraction | None = None,
) -> list[RothTableRow]:
    """Rows (eps_roth, eps_abc, K_eps, bound) for a cube root.

    ``source="max"`` takes K_eps as the largest k_epsilon over the resulting
    equations of convergents 0..terms-1 (the 1/1 seed is skipped unless
    ``include_seed``); an integer picks that convergent's equation alone.
    """
    if root.s != 3:
        raise ValueError("roth_table needs a cube root")
    _, convs = expand_convergents(root, max(terms, 2))
    if p1_over_q1 is None:
        p1_over_q1 = convs[1].value
    if source == "max":
        pool = [c for c in convs[:terms] if include_seed or c.n > 0]
    else:
        n = int(source)
        if n >= len(convs):
            _, convs = expand_convergents(root, n + 1)
        pool = [convs[n]]
    corpus = []
    for c in pool:
        eq = resulting_equation(root, c)
        corpus.append((c, eq, normalize_to_abc(eq), equation_radical(eq).value))

    rows = []
    for er in eps_roth_list:
        er = _frac(er)
        ea = eps_abc_from_roth(er)
        K, conv, eq = max(
            ((k_epsilon(t, ea, rad), c, eq) for c, eq, t, rad in corpus),
            key=lambda item: item[0],
        )
        bound = inverse_c_bound(RothBoundParams(root, ea, K, p1_over_q1))
        row = RothTableRow(er, ea, K, conv.n, str(eq), bound)
        published = PUBLISHED_CBRT2_ROWS.get(er) if root.k == 2 else None
        if published is not None:
            pub_K, pub_bound, note = published
            row.known_bound = note
            if abs(K - pub_K) <= 0.01 and abs(bound - pub_bound) > 0.02:
                row.flags.append(FLAG_DISCREPANCY)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RidoutQuery:
    root: RootSpec
    primes: tuple[int, ...]
    eps: Fraction
    K: float
    depth: int = 40

    def __post_init__(self):
        if not self.primes:
            raise ValueError("prime set must be non-empty")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))
        object.__setattr__(self, "eps", _frac(self.eps))

    @property
    def rad_s(self) -> int:
        return math.prod(self.primes)


def _pow(base, exp: Fraction):
    """Exact for a rational base and integer exponent, float otherwise."""
    if exp.denominator == 1 and isinstance(base, Fraction):
        return base ** int(exp)
    return float(base) ** float(exp)


def ridout_sqrt_bound(query: RidoutQuery):
    """(K rad(S)^(1+e) k^(1+e))^((1+e)/2), an upper bound on p_n."""
    if query.root.s != 2:
        raise ValueError("ridout_sqrt_bound needs a square root")
    e1 = 1 + query.eps
    inner = _frac(query.K) * _pow(Fraction(query.rad_s * query.root.k), e1)
    return _pow(inner, e1 / 2)


def _is_s_integer(q: int, primes) -> bool:
    for p in primes:
        while q % p == 0:
            q //= p
    return q == 1


def ridout_sqrt_solutions(query: RidoutQuery) -> list[Convergent]:
    """Convergents with |p^2 - k q^2| = 1, q > 1 an S-integer, p within the bound."""
    bound = ridout_sqrt_bound(query)
    _, convs = expand_convergents(query.root, query.depth)
    k = query.root.k
    return [
        c
        for c in convs
        if c.q > 1
        and abs(c.p**2 - k * c.q**2) == 1
        and _is_s_integer(c.q, query.primes)
        and c.p <= bound
    ]


def ridout_cbrt_bound(query: RidoutQuery, p1_over_q1: Fraction | None = None) -> float:
    """(K rad(S)^(1+e) k^(2+2e) (p1/q1)^(1+e))^(2(1+e)/3)."""
    if query.root.s != 3:
        raise ValueError("ridout_cbrt_bound needs a cube root")
    if p1_over_q1 is None:
        p1_over_q1 = first_upper_convergent(query.root)
    e1 = 1 + query.eps
    if query.K == 0:
        return 0.0
    log_inner = (
        math.log(query.K)
        + float(e1) * math.log(query.rad_s)
        + 2 * float(e1) * math.log(query.root.k)
        + float(e1) * math.log(_frac(p1_over_q1))
    )
    return math.exp(log_inner * float(2 * e1 / 3))


@dataclass(frozen=True)
class ExplicitAbcParams:
    """c < L rad(abc)^(3+eps)."""

    L_eps: float
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        if self.L_eps <= 0:
            raise ValueError("L_eps must be positive")
        object.__setattr__(self, "eps", _frac(self.eps))
        if self.eps < 0:
            raise ValueError("eps must be >= 0")


def explicit_power_gain_bound(k: int, p_n: int, params: ExplicitAbcParams) -> float:
    """ln(k^2 p^3) / ln((p^3 / L)^(1/(3+eps))); tends to 3+eps as p grows."""
    cube = p_n**3
    if cube <= params.L_eps:
        raise BoundUndefined(f"p^3 = {cube} does not exceed L = {params.L_eps}")
    denom = (log_big(cube) - math.log(params.L_eps)) / (3 + float(params.eps))
    return log_big(k * k * cube) / denom
