"""Exponential sums with rational ratios over prime moduli.

Centerpiece: for a prime p and a convex lattice domain of points (u, v)
with 1 <= u <= U < p, the ratio sum adds exp(2 pi i a w / p) over the
domain, where w = v / u mod p.  Dyadic prime-window moments of these sums,
the balanced-residue classification used to bound them, and the modular
congruence count with its orthogonality identity live here too.

Complex arithmetic is double precision with a fixed accumulation order
(primes ascending; within a sum, u then v ascending), so repeated runs
and any worker split reproduce the same totals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import e as _E, floor, log
from typing import Iterator

import numpy as np

from .arith import is_prime, primes_in_window
from .counting import CoefficientVector, IntegerBox
from .errors import DomainError
from .parallel import round_robin, run_tasks


@dataclass(frozen=True)
class ColumnDomain:
    """Convex lattice domain as per-column v-ranges over 1 <= u <= u_max.

    ``columns[u-1]`` is (lo, hi) with 0 <= lo <= hi <= v_max, or None for
    an empty column.  Construction validates the convex-polyomino shape:
    nonempty columns are contiguous, lower bounds descend then ascend at
    most once, upper bounds ascend then descend at most once.
    """

    u_max: int
    v_max: int
    columns: tuple[tuple[int, int] | None, ...]

    def __post_init__(self):
        if self.u_max < 1 or self.v_max < 0:
            raise DomainError("domain extents must be positive")
        if len(self.columns) != self.u_max:
            raise DomainError("one column range required per u in [1, u_max]")
        filled = [i for i, c in enumerate(self.columns) if c is not None]
        if not filled:
            raise DomainError("domain must contain at least one lattice point")
        if filled != list(range(filled[0], filled[-1] + 1)):
            raise DomainError("nonempty columns must be contiguous")
        for c in self.columns:
            if c is None:
                continue
            lo, hi = c
            if not 0 <= lo <= hi <= self.v_max:
                raise DomainError(f"column range {c} outside [0, {self.v_max}]")
        los = [self.columns[i][0] for i in filled]
        his = [self.columns[i][1] for i in filled]
        if not _turns_at_most_once(los, valley=True):
            raise DomainError("lower bounds must descend then ascend (convexity)")
        if not _turns_at_most_once(his, valley=False):
            raise DomainError("upper bounds must ascend then descend (convexity)")

    @classmethod
    def rectangle(cls, u_max: int, v_max: int) -> "ColumnDomain":
        return cls(u_max, v_max, tuple((0, v_max) for _ in range(u_max)))

    @classmethod
    def right_triangle(cls, u_max: int, v_max: int) -> "ColumnDomain":
        """Triangle with vertices near (1, 0), (u_max, 0), (1, v_max)."""
        cols = tuple(
            (0, (v_max * (u_max - u)) // max(1, u_max - 1))
            for u in range(1, u_max + 1)
        )
        return cls(u_max, v_max, cols)

    def n_points(self) -> int:
        return sum(c[1] - c[0] + 1 for c in self.columns if c is not None)

    def iter_points(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self.columns):
            if c is None:
                continue
            lo, hi = c
            for v in range(lo, hi + 1):
                yield i + 1, v


def _turns_at_most_once(seq: list[int], valley: bool) -> bool:
    diffs = [b - a for a, b in zip(seq, seq[1:]) if b != a]
    signs = [1 if d > 0 else -1 for d in diffs]
    flips = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    if flips > 1:
        return False
    if flips == 1:
        want = (-1, 1) if valley else (1, -1)
        return (signs[0], signs[-1]) == want
    return True


@lru_cache(maxsize=32)
def _point_arrays(domain: ColumnDomain) -> tuple[np.ndarray, np.ndarray]:
    pts = list(domain.iter_points())
    us = np.array([u for u, _ in pts], dtype=np.int64)
    vs = np.array([v for _, v in pts], dtype=np.int64)
    return us, vs


def balanced_residue(v: int, u: int, p: int) -> int:
    """The unique w with w = v/u mod p and |w| < p/2."""
    if p < 3 or not is_prime(p):
        raise DomainError("modulus must be an odd prime")
    if u % p == 0:
        raise DomainError("column index must be invertible")
    w = (v * pow(u, p - 2, p)) % p
    return w - p if w > p // 2 else w


def ratio_sum(a: int, p: int, domain: ColumnDomain) -> complex:
    """Sum of exp(2 pi i a (v/u mod p) / p) over the domain's lattice points.

    a is reduced mod p first; every column index must be invertible,
    hence the precondition p > u_max.
    """
    if not is_prime(p):
        raise DomainError("modulus must be prime")
    if p <= domain.u_max:
        raise DomainError(f"prime {p} must exceed the column extent {domain.u_max}")
    a_mod = a % p
    us, vs = _point_arrays(domain)
    inv = np.array([pow(u, p - 2, p) for u in range(1, domain.u_max + 1)], dtype=np.int64)
    ks = (a_mod * vs % p) * inv[us - 1] % p
    if len(ks) > p:
        table = np.exp(2j * np.pi * np.arange(p) / p)
        return complex(table[ks].sum())
    return complex(np.exp(2j * np.pi * ks / p).sum())


@dataclass
class MomentStats:
    """Dyadic-window moment of ratio-sum magnitudes with its reference envelope."""

    q: int
    a: int
    n: int
    u_max: int
    v_max: int
    total: float
    bound_reference: float
    per_prime: tuple[tuple[int, float], ...] | None = None

    @property
    def ratio(self) -> float:
        return self.total / self.bound_reference

    def csv_row(self) -> list:
        return [
            self.q, self.a, self.n, self.u_max, self.v_max,
            repr(self.total), repr(self.bound_reference), repr(self.ratio),
        ]


MOMENT_CSV_COLUMNS = ["q", "a", "n", "U", "V", "total", "bound_reference", "ratio"]


def _moment_slice(args) -> list[tuple[int, float]]:
    a, primes, domain = args
    return [(p, abs(ratio_sum(a, p, domain))) for p in primes]


def moment_over_primes(
    a: int,
    q: int,
    n: int,
    domain: ColumnDomain,
    *,
    workers: int = 1,
    keep_per_prime: bool = True,
) -> MomentStats:
    """Sum of |ratio sum|^n over primes p in [q, 2q] with p not dividing a.

    Accumulation is in ascending-prime order regardless of the worker
    split, so totals are reproducible bit for bit.
    """
    if n < 1:
        raise DomainError("moment order must be positive")
    if q < 2:
        raise DomainError("window base must be at least 2")
    if not 1 <= a <= 2 * q:
        raise DomainError("coefficient must lie in [1, 2q]")
    if q <= domain.u_max or q <= domain.v_max:
        raise DomainError("window base must exceed both domain extents")
    primes = [p for p in primes_in_window(q).primes if a % p != 0]
    tasks = [(a, sl, domain) for sl in round_robin(primes, workers)]
    parts = run_tasks(_moment_slice, tasks, workers)
    merged = sorted((pair for part in parts for pair in part), key=lambda t: t[0])
    total = 0.0
    for _, mag in merged:
        total += mag**n
    bound = (domain.u_max + domain.v_max) ** n * q * log(q) ** (2**n - 2)
    return MomentStats(
        q=q,
        a=a,
        n=n,
        u_max=domain.u_max,
        v_max=domain.v_max,
        total=total,
        bound_reference=bound,
        per_prime=tuple(merged) if keep_per_prime else None,
    )


@dataclass(frozen=True)
class ProofStatistics:
    """Balanced-residue classification counts for one prime.

    near_zero is the number of columns u <= u_max whose balanced residue
    of a/u is below e^index_low in magnitude; band_counts[j] counts
    residues with e^j <= |w| < e^(j+1).  band_caps[j] reports the box
    constant floor(e^(j+1) u_max / window_base) + 1; it drives no logic.
    """

    p: int
    a: int
    u_max: int
    v_max: int
    window_base: int
    index_low: int
    index_high: int
    near_zero: int
    band_counts: dict[int, int]
    band_caps: dict[int, int]

    def classified(self) -> int:
        return self.near_zero + sum(self.band_counts.values())


def proof_statistics(
    a: int, p: int, u_max: int, v_max: int, window_base: int | None = None
) -> ProofStatistics:
    """Classify |balanced residue of a/u| for u <= u_max into dyadic-e bands."""
    if p <= u_max:
        raise DomainError("prime must exceed the column extent")
    if p < 3 or not is_prime(p):
        raise DomainError("modulus must be an odd prime")
    if a % p == 0:
        raise DomainError("coefficient must be coprime to the prime")
    if u_max < 1 or v_max < 1:
        raise DomainError("extents must be positive")
    q = p if window_base is None else window_base
    if q < 1 or 2 * q < v_max:
        raise DomainError("window base too small for the v extent")
    i_low = floor(log(2 * q / v_max))
    i_high = floor(log(2 * q))
    near_zero = 0
    band_counts = {j: 0 for j in range(i_low + 1, i_high + 1)}
    for u in range(1, u_max + 1):
        w = abs(balanced_residue(a, u, p))
        if w < _E**i_low:
            near_zero += 1
            continue
        for j in range(i_low + 1, i_high + 1):
            if _E**j <= w < _E ** (j + 1):
                band_counts[j] += 1
                break
    band_caps = {
        j: floor(_E ** (j + 1) * u_max / q) + 1 for j in range(i_low + 1, i_high + 1)
    }
    return ProofStatistics(
        p=p,
        a=a,
        u_max=u_max,
        v_max=v_max,
        window_base=q,
        index_low=i_low,
        index_high=i_high,
        near_zero=near_zero,
        band_counts=band_counts,
        band_caps=band_caps,
    )


# ---------------------------------------------------------------------------
# Modular congruence count and the orthogonality identity
# ---------------------------------------------------------------------------

def _validate_congruence_inputs(
    coeffs: CoefficientVector, p: int, box0: IntegerBox, box: IntegerBox
) -> None:
    if not is_prime(p):
        raise DomainError("modulus must be prime")
    if box0.n != coeffs.n or box.n != coeffs.n:
        raise DomainError("box dimensions must match the coefficient count")
    if any(b < 0 for b in box0.offsets):
        raise DomainError("denominator box must hold positive integers")
    if max(b + h for b, h in zip(box0.offsets, box0.lengths)) >= p:
        raise DomainError("prime must exceed every denominator in the box")


def congruence_count(
    coeffs: CoefficientVector, p: int, box0: IntegerBox, box: IntegerBox
) -> int:
    """Solutions of sum a_j s_j / r_j = a_0 (mod p) over the two boxes.

    Pure modular arithmetic; denominators are invertible because the
    denominator box sits below p.
    """
    _validate_congruence_inputs(coeffs, p, box0, box)
    n = coeffs.n
    target = coeffs.a0 % p
    count = 0
    s_residues = [[s % p for s in rng] for rng in box.ranges()]
    for r in product(*box0.ranges()):
        c = [coeffs.a[j] * pow(r[j], p - 2, p) % p for j in range(n)]

        def rec(j: int, acc: int):
            nonlocal count
            if j == n:
                if acc == target:
                    count += 1
                return
            cj = c[j]
            for sr in s_residues[j]:
                rec(j + 1, (acc + cj * sr) % p)

        rec(0, 0)
    return count


def orthogonality_check(
    coeffs: CoefficientVector, p: int, box0: IntegerBox, box: IntegerBox
) -> float:
    """|character-sum evaluation - exact congruence count|.

    Expands the congruence indicator through the full character sum over
    lambda in [0, p-1] (the lambda = 0 term contributes the product of
    squared box lengths over p) and returns the absolute deviation from
    the exact modular count.
    """
    _validate_congruence_inputs(coeffs, p, box0, box)
    exact = congruence_count(coeffs, p, box0, box)
    n = coeffs.n
    table = np.exp(2j * np.pi * np.arange(p) / p)
    r_ranges = box0.ranges()
    s_mods = [np.array([s % p for s in rng], dtype=np.int64) for rng in box.ranges()]
    inv = [
        [pow(r, p - 2, p) for r in rng] for rng in r_ranges
    ]
    rhs = 0j
    for lam in range(p):
        prod = table[(-lam * coeffs.a0) % p]
        for j in range(n):
            factor = 0j
            lam_aj = lam * coeffs.a[j]
            for w in inv[j]:
                coef = lam_aj * w % p
                factor += table[(coef * s_mods[j]) % p].sum()
            prod *= factor
        rhs += prod
    rhs /= p
    return abs(rhs - exact)


def random_orthogonality_instances(
    count: int,
    *,
    seed: int,
    n_max: int = 2,
    p_max: int = 101,
    max_len: int = 6,
    coeff_bound: int = 5,
    offset_bound: int = 10,
) -> Iterator[tuple[CoefficientVector, int, IntegerBox, IntegerBox]]:
    """Seeded random instances satisfying the congruence preconditions."""
    rng = random.Random(seed)
    primes = [p for p in range(max_len + 1, p_max + 1) if is_prime(p)]
    for _ in range(count):
        n = rng.randint(1, n_max)
        p = rng.choice(primes)
        lengths = tuple(rng.randint(1, min(max_len, p - 1)) for _ in range(n))
        r_offsets = tuple(
            rng.randint(0, max(0, p - 1 - h)) for h in lengths
        )
        s_offsets = tuple(rng.randint(-offset_bound, offset_bound) for _ in range(n))
        a = []
        while len(a) < n:
            x = rng.randint(-coeff_bound, coeff_bound)
            if x:
                a.append(x)
        a0 = rng.randint(-coeff_bound, coeff_bound)
        yield (
            CoefficientVector(a0, tuple(a)),
            p,
            IntegerBox(r_offsets, lengths),
            IntegerBox(s_offsets, lengths),
        )
