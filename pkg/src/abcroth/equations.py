"""Integer identities p^s = k q^s + d built from convergents, and their ABC triples."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cf import Convergent, RootSpec

__all__ = [
    "DegenerateEquation",
    "NotCoprime",
    "AbcTriple",
    "ResultingEquation",
    "resulting_equation",
    "normalize_to_abc",
]


class DegenerateEquation(ArithmeticError):
    pass


class NotCoprime(ArithmeticError):
    pass


@dataclass(frozen=True)
class AbcTriple:
    """Coprime positive integers with a + b = c, stored with a <= b."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b) < 1 or self.a + self.b != self.c:
            raise ValueError(f"not an ABC triple: {self.a} + {self.b} != {self.c}")
        if self.a > self.b:
            raise ValueError("triples are stored with a <= b")
        if math.gcd(self.a, self.b) != 1:
            # a, b coprime implies c coprime to both
            raise NotCoprime(f"({self.a}, {self.b}, {self.c}) is not coprime")

    @classmethod
    def from_pair(cls, x: int, y: int) -> AbcTriple:
        return cls(min(x, y), max(x, y), x + y)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"{self.c} = {self.b} + {self.a}"


@dataclass(frozen=True)
class ResultingEquation:
    """p^s - k q^s = d for a convergent p/q of k**(1/s).

    ``g`` is the common divisor of the two addends of the positive
    arrangement (gcd(k q^s, |d|) in either form); it always divides k.
    """

    root: RootSpec
    n: int
    p: int
    q: int
    d: int
    g: int

    @property
    def k(self) -> int:
        return self.root.k

    @property
    def s(self) -> int:
        return self.root.s

    @property
    def p_power(self) -> int:
        return self.p**self.s

    @property
    def kq_power(self) -> int:
        return self.k * self.q**self.s

    @property
    def sides(self) -> tuple[int, int, int]:
        """Positive arrangement as (larger addend, |d|, sum)."""
        if self.d > 0:
            return self.kq_power, self.d, self.p_power
        return self.p_power, -self.d, self.kq_power

    @property
    def defect_product(self) -> int:
        """|d| q k p, the argument of both gain logarithms."""
        return abs(self.d) * self.q * self.k * self.p

    def __str__(self):
        big, small, total = self.sides
        return f"{total} = {big} + {small}"


def resulting_equation(root: RootSpec, conv: Convergent) -> ResultingEquation:
    d = conv.p**root.s - root.k * conv.q**root.s
    if d == 0:
        raise DegenerateEquation(f"{conv} is an exact root of {root}")
    g = math.gcd(root.k * conv.q**root.s, d)
    return ResultingEquation(root, conv.n, conv.p, conv.q, d, g)


def normalize_to_abc(eq: ResultingEquation) -> AbcTriple:
    """Divide the positive arrangement by its common divisor.

    >>> from abcroth.cf import RootSpec, Convergent
    >>> normalize_to_abc(resulting_equation(RootSpec(2, 3), Convergent(1, 4, 3)))
    AbcTriple(a=5, b=27, c=32)
    """
    big, small, total = eq.sides
    g = eq.g
    if big % g or small % g:
        raise NotCoprime(f"gcd {g} does not divide {eq}")
    return AbcTriple.from_pair(big // g, small // g)
