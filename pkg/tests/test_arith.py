"""Arithmetic primitives against brute-force oracles."""

import math

import pytest

from fareylab import arith
from fareylab.calibration import TOTIENT_MOMENT_BANDS, TOTIENT_MOMENT_GRID
from fareylab.errors import DomainError, ResourceError


def phi_oracle(r):
    return sum(1 for s in range(1, r + 1) if math.gcd(s, r) == 1)


def tau_oracle(m):
    return sum(1 for d in range(1, m + 1) if m % d == 0)


def prime_factors_oracle(m):
    out = []
    d = 2
    while d * d <= m:
        while m % d == 0:
            if d not in out:
                out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def test_gcd_examples():
    assert arith.gcd(0, 5) == 5
    assert arith.gcd(1, 999) == 1
    # brute-force scan of common divisors of 12 and 18
    best = max(d for d in range(1, 19) if 12 % d == 0 and 18 % d == 0)
    assert arith.gcd(12, 18) == best == 6


def test_gcd_divides_both_and_rejects_zero_pair():
    for a in range(0, 30):
        for b in range(0, 30):
            if a == 0 and b == 0:
                continue
            g = arith.gcd(a, b)
            assert (a % g == 0 if a else True) and (b % g == 0 if b else True)
    with pytest.raises(DomainError):
        arith.gcd(0, 0)
    with pytest.raises(DomainError):
        arith.gcd(-2, 4)


def test_mod_inverse_examples_and_errors():
    assert arith.mod_inverse(1, 7) == 1
    # scan w in 1..4 for 2w = 1 mod 5
    assert next(w for w in range(1, 5) if 2 * w % 5 == 1) == 3
    assert arith.mod_inverse(2, 5) == 3
    assert 6 * 6 % 7 == 1
    assert arith.mod_inverse(6, 7) == 6
    with pytest.raises(DomainError):
        arith.mod_inverse(14, 7)
    with pytest.raises(DomainError):
        arith.mod_inverse(3, 8)


def test_euler_phi_matches_brute_force():
    assert arith.euler_phi(1) == 1
    assert arith.euler_phi(12) == phi_oracle(12) == 4
    assert arith.euler_phi(97) == 96
    for r in range(1, 301):
        assert arith.euler_phi(r) == phi_oracle(r)
    with pytest.raises(DomainError):
        arith.euler_phi(0)


def test_mobius_examples_and_brute():
    assert arith.mobius(1) == 1
    assert arith.mobius(4) == 0
    assert arith.mobius(30) == -1  # three prime factors
    for d in range(1, 301):
        ps = prime_factors_oracle(d) if d > 1 else []
        squarefree = all(d % (p * p) != 0 for p in ps)
        expect = 0 if not squarefree else (-1) ** len(ps)
        if d == 1:
            expect = 1
        assert arith.mobius(d) == expect
    with pytest.raises(DomainError):
        arith.mobius(0)


def test_tau_and_omega():
    assert arith.tau(1) == 1
    assert arith.tau(12) == 6
    for p in (2, 3, 5, 97):
        assert arith.tau(p) == 2
    assert arith.omega(1) == 0
    assert arith.omega(12) == 2
    assert arith.omega(30) == 3
    for m in range(1, 301):
        assert arith.tau(m) == tau_oracle(m)
        assert arith.omega(m) == len(prime_factors_oracle(m)) if m > 1 else True
    # 2^omega(m) equals the count of squarefree divisors
    for m in range(1, 201):
        assert 2 ** arith.omega(m) == sum(
            1 for d in arith.divisors(m) if arith.mobius(d) != 0
        )


def delta_oracle(m):
    # directly from the definition: scan windows anchored just below and
    # at each divisor
    divs = [d for d in range(1, m + 1) if m % d == 0]
    best = 0
    for d in divs:
        for u in (d * (1 - 1e-9), float(d)):
            cnt = sum(1 for x in divs if u < x <= math.e * u)
            best = max(best, cnt)
    return best


def test_hooley_delta_examples_and_oracle():
    assert arith.hooley_delta(1) == 1
    assert arith.hooley_delta(3) == 1
    assert arith.hooley_delta(12) == 3
    for m in range(1, 401):
        assert arith.hooley_delta(m) == delta_oracle(m)
    with pytest.raises(DomainError):
        arith.hooley_delta(0)


def test_hooley_delta_bounds_and_odd_primes():
    for m in range(1, 10_001):
        d = arith.hooley_delta(m)
        assert 1 <= d <= arith.tau(m)
    for p in (3, 5, 7, 11, 101, 9973):
        assert arith.hooley_delta(p) == 1


def trial_division_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def test_primes_in_window_examples():
    assert arith.primes_in_window(2).primes == (2, 3)
    assert arith.primes_in_window(10).primes == (11, 13, 17, 19)
    assert arith.primes_in_window(100).primes[0] == 101
    with pytest.raises(DomainError):
        arith.primes_in_window(1)
    with pytest.raises(ResourceError):
        arith.primes_in_window(arith.WINDOW_UPPER_CAP)


@pytest.mark.parametrize("q", [2, 3, 10, 97, 1000, 4999])
def test_primes_in_window_complete_and_prime(q):
    window = arith.primes_in_window(q)
    got = set(window.primes)
    for p in window.primes:
        assert trial_division_prime(p)
    for m in range(q, 2 * q + 1):
        assert (m in got) == trial_division_prime(m)
    assert list(window.primes) == sorted(window.primes)


def test_build_sieve_examples():
    t = arith.build_sieve(1)
    assert int(t.phi[1]) == 1 and int(t.mu[1]) == 1
    t = arith.build_sieve(10)
    assert int(t.phi[1:].sum()) == 32
    assert int(t.mu[8]) == 0
    with pytest.raises(DomainError):
        arith.build_sieve(0)
    with pytest.raises(ResourceError):
        arith.build_sieve(10_000, cap=100)


def test_sieve_agrees_with_pointwise_everywhere():
    limit = 10_000
    t = arith.build_sieve(limit)
    for r in range(1, limit + 1):
        assert int(t.phi[r]) == arith.euler_phi(r)
        assert int(t.mu[r]) == arith.mobius(r)
    # smallest prime factor reproduces factorization
    for r in range(2, 2001):
        assert t.factor(r) == arith.factorize(r)


def test_sieve_prime_entries():
    t = arith.build_sieve(1000)
    for p in arith.primes_upto(1000):
        assert int(t.phi[p]) == p - 1
        assert int(t.mu[p]) == -1


def test_divisor_sum_identities():
    limit = 10_000
    t = arith.build_sieve(limit)
    phi_sum = [0] * (limit + 1)
    mu_sum = [0] * (limit + 1)
    for d in range(1, limit + 1):
        pd = int(t.phi[d])
        md = int(t.mu[d])
        for m in range(d, limit + 1, d):
            phi_sum[m] += pd
            mu_sum[m] += md
    for r in range(1, limit + 1):
        assert phi_sum[r] == r
        assert mu_sum[r] == (1 if r == 1 else 0)


def test_mobius_phi_divisor_identity_cleared():
    # sum over d | r of mu(d) r/d equals phi(r), the cleared-denominator
    # form of the rational identity
    limit = 10_000
    t = arith.build_sieve(limit)
    acc = [0] * (limit + 1)
    for d in range(1, limit + 1):
        md = int(t.mu[d])
        if md == 0:
            continue
        for m in range(d, limit + 1, d):
            acc[m] += md * (m // d)
    for r in range(1, limit + 1):
        assert acc[r] == int(t.phi[r])


def test_mobius_phi_identity_in_rational_arithmetic():
    # sum over d | r of mu(d)/d equals phi(r)/r as exact rationals
    from fareylab import rationals as ra

    for r in range(1, 301):
        acc = ra.Accumulator.zero()
        for d in arith.divisors(r):
            acc = ra.accumulate(acc, arith.mobius(d), ra.Fraction(1, d))
        g = math.gcd(arith.euler_phi(r), r)
        assert (acc.numerator, acc.denominator) == (
            arith.euler_phi(r) // g,
            r // g,
        )


def test_multiplicativity_on_coprime_pairs():
    limit = 10_000
    t = arith.build_sieve(limit)
    tau_ = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            tau_[m] += 1
    for a in range(1, limit + 1):
        for b in range(a, limit // a + 1):
            if math.gcd(a, b) != 1:
                continue
            ab = a * b
            assert tau_[ab] == tau_[a] * tau_[b]
            assert int(t.phi[ab]) == int(t.phi[a]) * int(t.phi[b])
            assert int(t.mu[ab]) == int(t.mu[a]) * int(t.mu[b])


def test_totient_moment_band_frozen():
    t = arith.build_sieve(max(TOTIENT_MOMENT_GRID))
    for n, (lo, hi) in TOTIENT_MOMENT_BANDS.items():
        for H in TOTIENT_MOMENT_GRID:
            ratio = sum(int(t.phi[r]) ** (n - 1) for r in range(1, H + 1)) / H**n
            assert lo <= ratio <= hi, (n, H, ratio)
