"""Big-integer utilities: integer roots, primality, factorization, radicals, logs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "FactorizationBudgetExceeded",
    "FactoredInteger",
    "integer_nth_root",
    "is_perfect_power",
    "is_probable_prime",
    "factorize",
    "radical",
    "radical_upper_bound",
    "log_big",
]

TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000
_LN2 = math.log(2.0)
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_PROBABLE_ROUNDS = 64


class FactorizationBudgetExceeded(ArithmeticError):
    """Raised when Pollard rho exhausts its iteration budget.

    ``factors`` holds the primes found so far and ``cofactors`` the composite
    parts that could not be split, so callers can still bound the radical.
    """

    def __init__(self, value: int, factors: dict[int, int], cofactors: list[int]):
        self.value = value
        self.factors = dict(factors)
        self.cofactors = list(cofactors)
        super().__init__(
            f"factorization budget exceeded for {value}; unsplit cofactors {cofactors}"
        )


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...] = ()
    probable: bool = field(default=False, compare=False)

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self) -> int:
        return math.prod(self.primes)


def integer_nth_root(x: int, s: int) -> int:
    """Largest r with r**s <= x.

    A float (or bit-length) estimate seeds an integer Newton iteration; the
    result is bracketed exactly before returning.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x < 2 or s == 1:
        return x
    if s == 2:
        return math.isqrt(x)
    bl = x.bit_length()
    # Newton descends monotonically onto the floor root from any overestimate
    r = int(x ** (1.0 / s)) + 1 if bl <= 1000 else 0
    if r**s <= x:
        r = 1 << -(-bl // s)
    while True:
        nr = ((s - 1) * r + x // r ** (s - 1)) // s
        if nr >= r:
            break
        r = nr
    while r**s > x:
        r -= 1
    while (r + 1) ** s <= x:
        r += 1
    return r


def is_perfect_power(x: int, s: int) -> bool:
    return integer_nth_root(x, s) ** s == x


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(r - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64, 64 seeded random rounds above."""
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n % p == 0:
            return n == p
    if n < 1 << 64:
        return _miller_rabin(n, _DETERMINISTIC_BASES)
    rng = random.Random(n)
    bases = [rng.randrange(2, n - 1) for _ in range(_PROBABLE_ROUNDS)]
    return _miller_rabin(n, _DETERMINISTIC_BASES + tuple(bases))


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * TRIAL_LIMIT
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=1)
def _primorial_above_1000() -> int:
    # product tree keeps the multiplication cost near-linear
    level = [p for p in _small_primes() if p > 1000]
    while len(level) > 1:
        level = [
            level[i] * level[i + 1] if i + 1 < len(level) else level[i]
            for i in range(0, len(level), 2)
        ]
    return level[0]


_BUDGET = object()


def _brent_rho(n: int, budget: int, c: int = 1):
    """A nontrivial factor of composite n, None on a degenerate cycle,
    or the sentinel _BUDGET once ``budget`` iterations are spent."""
    rng = random.Random(n ^ c)
    y = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    spent = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        spent += 2 * r
        r *= 2
        if g == 1 and spent > budget:
            return _BUDGET
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _perfect_power_base(n: int) -> int | None:
    for e in range(2, n.bit_length() + 1):
        if e > 2 and e % 2 == 0:
            continue
        r = integer_nth_root(n, e)
        if r < 2:
            break
        if r**e == n:
            return r
    return None


def _split(n: int, budget: int) -> int | None:
    if n % 2 == 0:
        return 2
    base = _perfect_power_base(n)
    if base is not None:
        return base
    for c in range(1, 16):
        f = _brent_rho(n, budget, c)
        if f is _BUDGET:
            return None
        if f is not None:
            return f
    return None


def factorize(x: int, budget: int = DEFAULT_RHO_BUDGET) -> FactoredInteger:
    """Complete prime factorization of a positive integer.

    All prime factors below 10**6 are removed first (trial division by the
    primes below 1000, then a gcd against the product of the remaining small
    primes). Larger composites are split by Brent's rho, with ``budget``
    bounding the rho iterations spent per cofactor.

    >>> factorize(296100).factors
    ((2, 2), (3, 2), (5, 2), (7, 1), (47, 1))
    """
    if x < 1:
        raise ValueError("x must be positive")
    found: dict[int, int] = {}
    n = x
    for p in _small_primes():
        if p > 1000 or p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    stack = []
    if n > 1:
        smooth = math.gcd(n, _primorial_above_1000()) if n >= 1000**2 else 1
        if smooth > 1:
            stack.append(smooth)
            n //= smooth
            # the remaining part may still hold higher powers of those primes
            while (g := math.gcd(n, smooth)) > 1:
                stack.append(g)
                n //= g
        if n > 1:
            stack.append(n)
    probable = False
    stuck: list[int] = []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            probable |= m >= 1 << 64
            found[m] = found.get(m, 0) + 1
            continue
        f = _split(m, budget)
        if f is None:
            stuck.append(m)
        else:
            stack.extend((f, m // f))
    if stuck:
        raise FactorizationBudgetExceeded(x, found, stuck)
    return FactoredInteger(x, tuple(sorted(found.items())), probable)


def radical(x: int, budget: int = DEFAULT_RHO_BUDGET) -> int:
    """Product of the distinct primes dividing x; radical(1) == 1."""
    return factorize(x, budget).radical


def radical_upper_bound(x: int, budget: int = DEFAULT_RHO_BUDGET) -> tuple[int, bool]:
    """Return ``(bound, exact)`` with ``radical(x) <= bound``.

    When rho gives up, unsplit cofactors enter the bound whole; ``exact`` is
    False in that case.
    """
    try:
        return radical(x, budget), True
    except FactorizationBudgetExceeded as exc:
        return math.prod(exc.factors) * math.prod(set(exc.cofactors)), False


def log_big(x: int) -> float:
    """Natural log of a positive integer of any size.

    Splits x into a 53-bit mantissa and a power of two so the float
    conversion never overflows.
    """
    if x < 1:
        raise ValueError("log_big needs a positive integer")
    shift = max(0, x.bit_length() - 53)
    return math.log(x >> shift) + shift * _LN2
