"""Elementary multiplicative number theory.

Pointwise operations (totient, Mobius, divisor counts, the Hooley maximum)
factor by trial division and stay independent of the bulk sieve, so the two
routes can check each other.  Everything is exact over Python integers;
primality is always decided deterministically (trial division or a
segmented sieve of Eratosthenes), never probabilistically.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from math import e as _E, gcd as _gcd, isqrt

import numpy as np

from .errors import DomainError, ResourceError

# Memory guards: the sieve table allocates three arrays of `limit` entries,
# the window sieve a byte per candidate in [q, 2q].
SIEVE_LIMIT_CAP = 20_000_000
WINDOW_UPPER_CAP = 20_000_000


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers."""
    if a < 0 or b < 0:
        raise DomainError("gcd arguments must be nonnegative")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return _gcd(a, b)


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    top = isqrt(n)
    while f <= top:
        if n % f == 0:
            return False
        f += 2
    return True


def mod_inverse(v: int, p: int) -> int:
    """Inverse of v modulo a prime p, in [1, p-1]."""
    if not is_prime(p):
        raise DomainError(f"modulus {p} is not prime")
    if v % p == 0:
        raise DomainError(f"{v} is not invertible modulo {p}")
    return pow(v % p, p - 2, p)


def factorize(m: int, sieve: "SieveTable | None" = None) -> list[tuple[int, int]]:
    """Prime factorization as ascending (prime, exponent) pairs.

    Uses the smallest-prime-factor table when one is supplied and covers m,
    otherwise trial division.
    """
    if m < 1:
        raise DomainError("factorize requires a positive integer")
    if sieve is not None and m <= sieve.limit:
        return sieve.factor(m)
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
    f = 5
    while f * f <= m:
        if m % f == 0:
            k = 0
            while m % f == 0:
                m //= f
                k += 1
            out.append((f, k))
        f += 2 if f % 6 == 5 else 4
    if m > 1:
        out.append((m, 1))
    return out


def euler_phi(r: int) -> int:
    """Count of 1 <= s <= r coprime to r."""
    if r < 1:
        raise DomainError("euler_phi requires a positive integer")
    phi = 1
    for p, k in factorize(r):
        phi *= (p - 1) * p ** (k - 1)
    return phi


def mobius(d: int) -> int:
    """1 on d=1, 0 on non-squarefree d, otherwise (-1)^(prime count)."""
    if d < 1:
        raise DomainError("mobius requires a positive integer")
    fac = factorize(d)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def tau(m: int) -> int:
    """Number of positive divisors."""
    if m < 1:
        raise DomainError("tau requires a positive integer")
    out = 1
    for _, k in factorize(m):
        out *= k + 1
    return out


def omega(m: int) -> int:
    """Number of distinct prime divisors."""
    if m < 1:
        raise DomainError("omega requires a positive integer")
    return len(factorize(m))


def divisors(m: int) -> list[int]:
    """All positive divisors of m, ascending."""
    if m < 1:
        raise DomainError("divisors requires a positive integer")
    out = [1]
    for p, k in factorize(m):
        out = [d * p**j for d in out for j in range(k + 1)]
    out.sort()
    return out


def hooley_delta(m: int) -> int:
    """Maximum number of divisors of m in any window (u, e*u], u real >= 0.

    The supremum is attained either as u approaches a divisor from below
    (window [d, e*d)) or at u equal to a divisor (window (d, e*d]), so both
    conventions are scanned per divisor and the overall max taken.  e*d is
    irrational, so strict/non-strict upper comparison cannot differ.
    """
    divs = divisors(m)
    best = 0
    for i, d in enumerate(divs):
        upper = bisect_left(divs, _E * d)  # divisors strictly below e*d
        best = max(best, upper - i)        # window [d, e*d)
        best = max(best, upper - i - 1)    # window (d, e*d]
    return best


def primes_upto(n: int) -> list[int]:
    """Simple sieve of Eratosthenes."""
    if n < 2:
        return []
    mark = bytearray([1]) * (n + 1)
    mark[0] = mark[1] = 0
    for p in range(2, isqrt(n) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray((n - p * p) // p + 1)
    return [i for i in range(2, n + 1) if mark[i]]


@dataclass(frozen=True)
class PrimeWindow:
    """All primes in the dyadic window [q, 2q], ascending."""

    q: int
    primes: tuple[int, ...]


def primes_in_window(q: int) -> PrimeWindow:
    """Segmented sieve over [q, 2q]; exact and deterministic."""
    if q < 2:
        raise DomainError("window base must be at least 2")
    hi = 2 * q
    if hi > WINDOW_UPPER_CAP:
        raise ResourceError(
            f"window upper end {hi} exceeds sieve capacity {WINDOW_UPPER_CAP}"
        )
    base = primes_upto(isqrt(hi))
    seg = bytearray([1]) * (hi - q + 1)
    for p in base:
        start = max(p * p, ((q + p - 1) // p) * p)
        if start <= hi:
            seg[start - q :: p] = bytearray((hi - start) // p + 1)
    primes = tuple(q + i for i, keep in enumerate(seg) if keep)
    return PrimeWindow(q=q, primes=primes)


@dataclass(frozen=True)
class SieveTable:
    """Bulk phi/mu/smallest-prime-factor tables for 1 <= r <= limit.

    Arrays are write-protected after construction and safe to share
    across concurrent readers.  Index 0 is unused padding.
    """

    limit: int
    phi: np.ndarray
    mu: np.ndarray
    smallest_prime_factor: np.ndarray

    def factor(self, m: int) -> list[tuple[int, int]]:
        """Factor m <= limit by walking the smallest-prime-factor table."""
        if not 1 <= m <= self.limit:
            raise DomainError(f"{m} outside sieve range [1, {self.limit}]")
        spf = self.smallest_prime_factor
        out: list[tuple[int, int]] = []
        while m > 1:
            p = int(spf[m])
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        return out


def build_sieve(limit: int, cap: int = SIEVE_LIMIT_CAP) -> SieveTable:
    """Sieve phi, mu, and smallest prime factors up to limit."""
    if limit < 1:
        raise DomainError("sieve limit must be positive")
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} exceeds memory cap {cap}")
    n = limit
    phi = np.arange(n + 1, dtype=np.int64)
    mu = np.ones(n + 1, dtype=np.int8)
    spf = np.zeros(n + 1, dtype=np.int64)
    mu[0] = 0
    if n >= 1:
        spf[1] = 1
    for p in range(2, n + 1):
        if spf[p] == 0:  # p prime
            sl = spf[p::p]
            sl[sl == 0] = p
            phi[p::p] -= phi[p::p] // p
            mu[p::p] *= -1
            sq = p * p
            if sq <= n:
                mu[sq::sq] = 0
    for arr in (phi, mu, spf):
        arr.setflags(write=False)
    return SieveTable(limit=limit, phi=phi, mu=mu, smallest_prime_factor=spf)
