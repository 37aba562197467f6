"""Exact reduced fractions with heights, Farey membership, and signed
exact accumulation.

The Fraction type stores only nonnegative canonical values (the counting
sets are nonnegative); signed intermediate sums live in Accumulator.  Both
are immutable, always in lowest terms, and never round.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _gcd

from .arith import build_sieve
from .errors import DomainError


@dataclass(frozen=True)
class Fraction:
    """A reduced nonnegative rational s/r with r >= 1.

    Construct through :func:`reduce`; equal rationals always have equal
    field values.
    """

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise DomainError("denominator must be positive")
        if self.numerator < 0:
            raise DomainError("numerator must be nonnegative")
        if _gcd(self.numerator, self.denominator) != 1:
            raise DomainError(
                f"{self.numerator}/{self.denominator} is not in lowest terms; use reduce()"
            )

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def reduce(s: int, r: int) -> Fraction:
    """Canonical Fraction equal to s/r; idempotent."""
    if r < 1:
        raise DomainError("denominator must be positive")
    if s < 0:
        raise DomainError("numerator must be nonnegative")
    g = _gcd(s, r)
    return Fraction(s // g, r // g)


def height(f: Fraction) -> int:
    """max(|s|, r) of the canonical representation."""
    return max(f.numerator, f.denominator)


def in_farey(f: Fraction, h: int) -> bool:
    """Membership in the set of nonnegative rationals of height <= h."""
    if h < 1:
        raise DomainError("height bound must be positive")
    return height(f) <= h


def farey_unit_count(h: int) -> int:
    """Number of Farey fractions of order h in [0, 1]: 1 + sum of phi(r)."""
    if h < 1:
        raise DomainError("order must be positive")
    table = build_sieve(h)
    return 1 + int(table.phi[1:].sum())


def farey_pairs(h: int) -> list[tuple[int, int]]:
    """All (numerator, denominator) pairs of the order-h Farey set in [0, 1].

    Enumeration order: 0/1 first, then denominators ascending with coprime
    numerators ascending; includes 1 as 1/1.
    """
    if h < 1:
        raise DomainError("order must be positive")
    out = [(0, 1)]
    for r in range(1, h + 1):
        for s in range(1, r + 1):
            if _gcd(s, r) == 1:
                out.append((s, r))
    return out


def unit_fractions(h: int) -> list[Fraction]:
    """:func:`farey_pairs` as canonical Fraction values."""
    return [Fraction(s, r) for s, r in farey_pairs(h)]


@dataclass(frozen=True)
class Accumulator:
    """Exact signed rational partial sum, always in lowest terms."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise DomainError("accumulator denominator must be positive")
        if _gcd(abs(self.numerator), self.denominator) != 1:
            raise DomainError("accumulator value must be in lowest terms")

    @classmethod
    def zero(cls) -> "Accumulator":
        return cls(0, 1)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def accumulate(acc: Accumulator, coeff: int, f: Fraction) -> Accumulator:
    """acc + coeff * f, exactly, in lowest terms."""
    num = acc.numerator * f.denominator + coeff * f.numerator * acc.denominator
    den = acc.denominator * f.denominator
    g = _gcd(abs(num), den)
    return Accumulator(num // g, den // g)
