"""Empirical checks of the continued-fraction inequalities and gain bounds.

Every pass/fail decision is an exact integer comparison; floats only appear
in reported slacks and maxima. The one exception is gain <= quality, which
compares two ratios of logarithms at a fixed 1e-9 tolerance.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .arith import DEFAULT_RHO_BUDGET, integer_nth_root, is_perfect_power, log_big
from .cf import Convergent, RootSpec, expand_convergents, root_enclosure
from .equations import ResultingEquation, resulting_equation
from .metrics import FLAG_FACTORIZATION_SKIPPED, approximation_gain, equation_metrics

__all__ = [
    "Violation",
    "VerificationReport",
    "BvdpResult",
    "check_bvdp",
    "check_liouville_b",
    "scan_gains",
    "bvdp_suite",
    "liouville_suite",
    "gain_quality_suite",
    "check_roth_form",
    "RothConstantScan",
    "roth_constant_scan",
]

GAIN_QUALITY_TOL = 1e-9


@dataclass
class Violation:
    k: int
    s: int
    n: int
    lhs: str
    rhs: str
    slack: float


@dataclass
class VerificationReport:
    suite: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    max_observed: float | None = None
    max_at: tuple[int, int, int] | None = None
    skipped: int = 0
    observational: bool = False
    notes: list[str] = field(default_factory=list)
    runtime_s: float = 0.0

    @property
    def ok(self) -> bool:
        return self.observational or not self.violations

    def observe(self, value: float, where: tuple[int, int, int]):
        if self.max_observed is None or value > self.max_observed:
            self.max_observed = value
            self.max_at = where

    def merge(self, other: VerificationReport):
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.skipped += other.skipped
        self.notes.extend(other.notes)
        if other.max_observed is not None:
            self.observe(other.max_observed, other.max_at)

    def finish(self, started: float) -> VerificationReport:
        self.violations.sort(key=lambda v: (v.k, v.s, v.n))
        self.runtime_s = time.perf_counter() - started
        return self

    def to_dict(self, with_runtime: bool = True) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        if not with_runtime:
            del out["runtime_s"]
        return out


def _roots(s: int, k_range) -> list[RootSpec]:
    lo, hi = k_range
    return [RootSpec(k, s) for k in range(lo, hi + 1) if not is_perfect_power(k, s)]


def _run(worker, tasks, jobs: int) -> list:
    if jobs <= 1 or len(tasks) < 2:
        return [worker(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, *zip(*tasks)))


@dataclass(frozen=True)
class BvdpResult:
    upper_ok: bool
    lower_ok: bool
    upper_slack: float
    lower_slack: float

    @property
    def ok(self) -> bool:
        return self.upper_ok and self.lower_ok


def check_bvdp(eq: ResultingEquation, b_next: int) -> BvdpResult:
    """s p^(s-1) / (q (b+2)) <= |d| <= s p^(s-1) / (q b), b = b_{n+1}.

    Both sides are cross-multiplied, so the verdict is exact. Slacks are the
    ratios bound/|d| (upper) and |d|/bound (lower); >= 1 means pass.
    """
    num = eq.s * eq.p ** (eq.s - 1)
    d = abs(eq.d)
    upper_ok = d * eq.q * b_next <= num
    lower_ok = num <= d * eq.q * (b_next + 2)
    return BvdpResult(
        upper_ok,
        lower_ok,
        math.exp(log_big(num) - log_big(d * eq.q * b_next)),
        math.exp(log_big(d * eq.q * (b_next + 2)) - log_big(num)),
    )


def check_liouville_b(root: RootSpec, conv: Convergent, b_next: int) -> bool:
    """b_{n+1} <= s k q_n."""
    return b_next <= root.s * root.k * conv.q


def _bvdp_for_root(root: RootSpec, depth: int) -> VerificationReport:
    rep = VerificationReport("bvdp")
    cf, convs = expand_convergents(root, depth + 1)
    for conv in convs[:depth]:
        b_next = cf.coefficients[conv.n + 1]
        res = check_bvdp(resulting_equation(root, conv), b_next)
        rep.checked += 1
        rep.observe(1 / min(res.upper_slack, res.lower_slack), (root.k, root.s, conv.n))
        if not res.ok:
            side = "upper" if not res.upper_ok else "lower"
            rep.violations.append(
                Violation(
                    root.k, root.s, conv.n, f"{side} |d|={abs(conv.p**root.s - root.k * conv.q**root.s)}",
                    f"b_next={b_next}", min(res.upper_slack, res.lower_slack),
                )
            )
    return rep


def bvdp_suite(k_range=(2, 50), depth: int = 20, s: int = 3, jobs: int = 1) -> VerificationReport:
    """Two-sided defect bound over the first ``depth`` convergents of each root.

    Degrees other than 3 run in observational mode: results are recorded
    but never fail the suite. ``max_observed`` is the worst 1/slack.
    """
    started = time.perf_counter()
    rep = VerificationReport("bvdp", observational=s != 3)
    for part in _run(_bvdp_for_root, [(r, depth) for r in _roots(s, k_range)], jobs):
        rep.merge(part)
    return rep.finish(started)


def _liouville_for_root(root: RootSpec, depth: int) -> VerificationReport:
    rep = VerificationReport("liouville")
    cf, convs = expand_convergents(root, depth + 1)
    for conv in convs[:depth]:
        b_next = cf.coefficients[conv.n + 1]
        rep.checked += 1
        rep.observe(b_next / (root.s * root.k * conv.q), (root.k, root.s, conv.n))
        if not check_liouville_b(root, conv, b_next):
            rep.violations.append(
                Violation(root.k, root.s, conv.n, str(b_next), str(root.s * root.k * conv.q),
                          root.s * root.k * conv.q / b_next)
            )
    return rep


def liouville_suite(k_range=(2, 50), depth: int = 20, s: int = 3, jobs: int = 1) -> VerificationReport:
    started = time.perf_counter()
    rep = VerificationReport("liouville", observational=s != 3)
    for part in _run(_liouville_for_root, [(r, depth) for r in _roots(s, k_range)], jobs):
        rep.merge(part)
    return rep.finish(started)


def _gains_for_root(root: RootSpec, depth: int) -> VerificationReport:
    rep = VerificationReport("gains")
    _, convs = expand_convergents(root, depth)
    s = root.s
    for conv in convs:
        if conv.p <= conv.q:
            rep.skipped += 1
            continue
        eq = resulting_equation(root, conv)
        num = eq.kq_power if eq.d > 0 else eq.p_power
        den = eq.defect_product
        rep.checked += 1
        rep.observe(approximation_gain(eq), (root.k, s, conv.n))
        # ln(num)/ln(den) < s/2  <=>  num^2 < den^s
        if num * num >= den**s:
            rep.violations.append(
                Violation(root.k, s, conv.n, f"gain={approximation_gain(eq)!r}", f"{s}/2",
                          s / 2 - approximation_gain(eq))
            )
    return rep


def scan_gains(s: int = 3, k_range=(2, 50), depth: int = 30, jobs: int = 1) -> VerificationReport:
    """Approximation gain of every equation with p_n > q_n against s/2.

    For cube roots the threshold is 3/2. Perfect powers are skipped, as are
    convergents with p_n <= q_n (counted in ``skipped``).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    started = time.perf_counter()
    rep = VerificationReport("gains")
    rep.skipped += sum(1 for k in range(k_range[0], k_range[1] + 1) if is_perfect_power(k, s))
    for part in _run(_gains_for_root, [(r, depth) for r in _roots(s, k_range)], jobs):
        rep.merge(part)
    return rep.finish(started)


def _gain_quality_for_root(root: RootSpec, depth: int, budget: int) -> VerificationReport:
    rep = VerificationReport("gain-quality")
    _, convs = expand_convergents(root, depth)
    for conv in convs:
        eq = resulting_equation(root, conv)
        m = equation_metrics(eq, budget=budget)
        rep.checked += 1
        if FLAG_FACTORIZATION_SKIPPED in m.flags:
            # rad is an upper bound, so m.quality is a lower bound: still sound
            rep.notes.append(f"k={root.k} n={conv.n}: quality is a lower bound")
        rep.observe(m.approximation_gain - m.quality, (root.k, root.s, conv.n))
        if m.approximation_gain > m.quality + GAIN_QUALITY_TOL:
            rep.violations.append(
                Violation(root.k, root.s, conv.n, repr(m.approximation_gain), repr(m.quality),
                          m.quality - m.approximation_gain)
            )
    return rep


def gain_quality_suite(
    s: int = 3, k_range=(2, 50), depth: int = 30, jobs: int = 1, budget: int = DEFAULT_RHO_BUDGET
) -> VerificationReport:
    """approximation_gain <= quality + 1e-9 for every equation.

    ``max_observed`` is the largest gain - quality seen.
    """
    started = time.perf_counter()
    rep = VerificationReport("gain-quality")
    tasks = [(r, depth, budget) for r in _roots(s, k_range)]
    for part in _run(_gain_quality_for_root, tasks, jobs):
        rep.merge(part)
    return rep.finish(started)


def check_roth_form(root: RootSpec, eps_roth, C_inverse: float, depth: int) -> VerificationReport:
    """b_{n+1} <= C_inverse * q_n^eps_roth for n < depth, decided exactly.

    With eps = u/v and C_inverse = x/y (the exact value of the float), the
    test is b^v y^v <= x^v q^u.
    """
    started = time.perf_counter()
    eps = Fraction(eps_roth) if not isinstance(eps_roth, float) else Fraction(str(eps_roth))
    cinv = Fraction(C_inverse)
    u, v = eps.numerator, eps.denominator
    x, y = cinv.numerator, cinv.denominator
    rep = VerificationReport("roth-form")
    cf, convs = expand_convergents(root, depth + 1)
    for conv in convs[:depth]:
        b = cf.coefficients[conv.n + 1]
        rep.checked += 1
        ratio = b / (float(cinv) * math.exp(float(eps) * log_big(conv.q))) if cinv else math.inf
        rep.observe(ratio, (root.k, root.s, conv.n))
        if (b * y) ** v > x**v * conv.q**u:
            rep.violations.append(
                Violation(root.k, root.s, conv.n, f"b={b}", f"{float(cinv)}*{conv.q}^{eps}", 1 / ratio)
            )
    return rep.finish(started)


@dataclass
class RothConstantScan:
    """min over q of |alpha - p/q| q^(2+eps), p the nearest integer to q alpha."""

    exponent: Fraction
    q_max: int
    excluded: tuple[int, ...]
    min_value: float
    argmin_q: int
    all_above_one: bool
    values: dict[int, float] = field(default_factory=dict)


def roth_constant_scan(
    root: RootSpec,
    exponent=Fraction(5, 2),
    q_max: int = 10**4,
    exclude=(1,),
    report_q=(),
    bits: int = 256,
) -> RothConstantScan:
    """Scan |alpha - p/q| q^exponent over 1 <= q <= q_max.

    ``all_above_one`` is certified: with alpha enclosed in [lo, hi], the test
    |q alpha - p|^(2v) q^(2u - 2v) > 1 (exponent = u/v) is run on the
    endpoint closest to p/q.
    """
    exponent = Fraction(exponent)
    lo, hi = root_enclosure(root, bits)
    u, v = exponent.numerator, exponent.denominator
    excluded = tuple(sorted(set(exclude)))
    best = (math.inf, 0)
    all_above = True
    values: dict[int, float] = {}
    for q in range(1, q_max + 1):
        # nearest integer to q*alpha; ties are impossible for irrational alpha
        p = integer_nth_root(root.k * (2 * q) ** root.s, root.s)
        p = (p + 1) // 2
        dist_lo = abs(q * lo - p)
        dist_hi = abs(q * hi - p)
        gap = min(dist_lo, dist_hi) if (q * lo - p) * (q * hi - p) > 0 else Fraction(0)
        value = float(dist_lo / q) * q ** float(exponent)
        if q in report_q:
            values[q] = value
        if q in excluded:
            continue
        if value < best[0]:
            best = (value, q)
        # |q a - p| q^(e-1) > 1  <=>  |q a - p|^v q^(u-v) > 1
        if not gap**v * Fraction(q) ** (u - v) > 1:
            all_above = False
    return RothConstantScan(exponent, q_max, excluded, best[0], best[1], all_above, values)
