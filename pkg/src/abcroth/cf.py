"""Certified regular continued fractions of real roots k**(1/s)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import integer_nth_root, is_perfect_power

__all__ = [
    "InvalidRoot",
    "PrecisionExhausted",
    "RootSpec",
    "CFExpansion",
    "Convergent",
    "root_enclosure",
    "expand",
    "convergents",
    "expand_convergents",
]

MAX_DOUBLINGS = 8
BITS_PER_TERM = 64


class InvalidRoot(ValueError):
    pass


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass(frozen=True)
class RootSpec:
    """The real number k**(1/s), with k not a perfect s-th power."""

    k: int
    s: int

    def __post_init__(self):
        if self.k < 2 or self.s < 2:
            raise InvalidRoot(f"need k >= 2 and s >= 2, got k={self.k}, s={self.s}")
        if is_perfect_power(self.k, self.s):
            raise InvalidRoot(f"{self.k} is a perfect {self.s}-th power")

    def __str__(self):
        return f"{self.k}^(1/{self.s})"


@dataclass(frozen=True)
class Convergent:
    n: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class CFExpansion:
    root: RootSpec
    coefficients: tuple[int, ...]
    precision_bits: int

    def __str__(self):
        head, *tail = self.coefficients
        return f"[{head}; {', '.join(map(str, tail))}]" if tail else f"[{head}]"


def root_enclosure(root: RootSpec, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval of width 2**-bits that strictly contains the root."""
    r = integer_nth_root(root.k << (root.s * bits), root.s)
    den = 1 << bits
    return Fraction(r, den), Fraction(r + 1, den)


def _certified_terms(root: RootSpec, terms: int, bits: int) -> list[int]:
    """Partial quotients whose floor agrees at both ends of the enclosure.

    The interval is carried as two fractions lo_n/lo_d <= x <= hi_n/hi_d;
    each step maps x -> 1/(x - b) which swaps the endpoints.
    """
    r = integer_nth_root(root.k << (root.s * bits), root.s)
    den = 1 << bits
    lo_n, lo_d, hi_n, hi_d = r, den, r + 1, den
    out: list[int] = []
    while len(out) < terms:
        b = lo_n // lo_d
        if hi_n // hi_d != b:
            break
        out.append(b)
        lo_rem = lo_n - b * lo_d
        hi_rem = hi_n - b * hi_d
        if lo_rem == 0:
            # lower end sits on an integer: the reciprocal is unbounded
            break
        lo_n, lo_d, hi_n, hi_d = hi_d, hi_rem, lo_d, lo_rem
    return out


def expand(root: RootSpec, terms: int) -> CFExpansion:
    """First ``terms`` partial quotients b_0, b_1, ... of the root.

    Precision starts at 64 bits per requested term and doubles up to
    MAX_DOUBLINGS times before giving up.

    >>> expand(RootSpec(2, 3), 4).coefficients
    (1, 3, 1, 5)
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    bits = BITS_PER_TERM * terms
    for _ in range(MAX_DOUBLINGS + 1):
        coeffs = _certified_terms(root, terms, bits)
        if len(coeffs) == terms:
            return CFExpansion(root, tuple(coeffs), bits)
        bits *= 2
    raise PrecisionExhausted(
        f"could not certify {terms} terms of {root} at {bits // 2} bits"
    )


def convergents(cf: CFExpansion) -> list[Convergent]:
    """Convergents p_n/q_n, one per coefficient, by the standard recurrence."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    out = []
    for n, b in enumerate(cf.coefficients):
        p_prev, p = p, b * p + p_prev
        q_prev, q = q, b * q + q_prev
        assert math.gcd(p, q) == 1
        out.append(Convergent(n, p, q))
    return out


def expand_convergents(root: RootSpec, terms: int) -> tuple[CFExpansion, list[Convergent]]:
    cf = expand(root, terms)
    return cf, convergents(cf)
