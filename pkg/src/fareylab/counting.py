"""Counting engines for the unit-sum equation over bounded-height fractions.

Three routes compute the same quantity L_n(H), the number of n-tuples of
Farey fractions of order H (entries 0 and 1 included) summing to 1:

* brute: enumerate every n-tuple over the unit-interval Farey set and test
  the exact sum; the definitional oracle.
* naive: enumerate the first n-1 fractions and test whether the residual
  1 - sum is itself a Farey fraction of order H.
* fast: enumerate admissible denominator vectors (every squared component
  divides the component product), then coprime numerators for the first
  n-1 positions; the residual must reduce to exactly the last denominator,
  so each solution is counted once, keyed by its reduced denominators.

The module also counts solutions of general box-constrained linear
equations sum a_j s_j / r_j = a_0 (no coprimality), realizes the
constructive lower bounds, and counts doubly stochastic matrices at desk
scale.  All counts are exact; floats appear only in reporting ratios.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from math import gcd as _gcd, lcm as _lcm, log
from typing import Iterator

from .errors import DomainError, ResourceError
from .parallel import round_robin, run_tasks
from .rationals import Fraction, farey_pairs, reduce
from .records import CountRecord


@dataclass(frozen=True)
class IntegerBox:
    """Axis-aligned integer box: dimension j covers offsets[j]+1 .. offsets[j]+lengths[j]."""

    offsets: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.offsets) != len(self.lengths) or len(self.lengths) < 1:
            raise DomainError("offsets and lengths must be nonempty and match")
        if any(h < 1 for h in self.lengths):
            raise DomainError("box lengths must be positive")

    @property
    def n(self) -> int:
        return len(self.lengths)

    def ranges(self) -> list[range]:
        return [
            range(b + 1, b + h + 1) for b, h in zip(self.offsets, self.lengths)
        ]

    def contains(self, x: tuple[int, ...]) -> bool:
        return all(
            b + 1 <= xi <= b + h
            for xi, b, h in zip(x, self.offsets, self.lengths)
        )


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients (a_0, a_1, .., a_n); a_j nonzero for j >= 1, a_0 free."""

    a0: int
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) < 1:
            raise DomainError("at least one variable coefficient required")
        if any(aj == 0 for aj in self.a):
            raise DomainError("variable coefficients must be nonzero")

    @property
    def n(self) -> int:
        return len(self.a)


def _require_budget(predicted: int, budget: int | None, what: str) -> None:
    if budget is not None and predicted > budget:
        raise ResourceError(
            f"predicted {predicted} {what} candidates exceed budget {budget}"
        )


def _validate_nh(n: int, h: int) -> None:
    if n < 1:
        raise DomainError("dimension n must be positive")
    if h < 1:
        raise DomainError("height bound must be positive")


def _coprime_numerators(h: int) -> list[tuple[int, ...]]:
    """Numerator choices per denominator for the fast method.

    Index r holds the admissible numerators of a prefix fraction with
    reduced denominator r: coprime residues in [1, r-1] for r >= 2, and
    both boundary values {0, 1} for r = 1 (the fractions 0/1 and 1/1).
    """
    cop: list[tuple[int, ...]] = [(), (0, 1)]
    for r in range(2, h + 1):
        cop.append(tuple(s for s in range(1, r) if _gcd(s, r) == 1))
    return cop


# ---------------------------------------------------------------------------
# L_n(H): brute oracle
# ---------------------------------------------------------------------------

def _brute_slice(args) -> int:
    n, h, leading = args
    pairs = farey_pairs(h)
    count = 0
    if n == 1:
        for i in leading:
            s, r = pairs[i]
            if s == r:
                count += 1
        return count

    def rec(level: int, num: int, den: int):
        nonlocal count
        if level == n - 1:
            t = den - num
            for s, r in pairs:
                if s * den == r * t:
                    count += 1
            return
        for s, r in pairs:
            rec(level + 1, num * r + s * den, den * r)

    for i in leading:
        s, r = pairs[i]
        rec(1, s, r)
    return count


def count_L_brute(n: int, h: int, *, workers: int = 1, budget: int | None = None) -> CountRecord:
    """L_n(H) by full enumeration of n-tuples over the order-H Farey set."""
    _validate_nh(n, h)
    size = len(farey_pairs(h))
    predicted = size**n
    _require_budget(predicted, budget, "brute")
    start = time.perf_counter()
    tasks = [(n, h, sl) for sl in round_robin(range(size), workers)]
    count = sum(run_tasks(_brute_slice, tasks, workers))
    return CountRecord(
        method="brute",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=predicted,
        elapsed_s=time.perf_counter() - start,
    )


def iter_L_solutions_brute(n: int, h: int) -> Iterator[tuple[Fraction, ...]]:
    """Yield every solution tuple, brute force; test-scale helper."""
    _validate_nh(n, h)
    fracs = [Fraction(s, r) for s, r in farey_pairs(h)]

    def rec(level, chosen, num, den):
        if level == n:
            if num == den:
                yield tuple(chosen)
            return
        for f in fracs:
            yield from rec(
                level + 1, chosen + [f],
                num * f.denominator + f.numerator * den,
                den * f.denominator,
            )

    yield from rec(0, [], 0, 1)


# ---------------------------------------------------------------------------
# L_n(H): naive residual method
# ---------------------------------------------------------------------------

def _naive_slice(args) -> int:
    n, h, leading = args
    pairs = farey_pairs(h)
    count = 0

    def rec(level: int, num: int, den: int):
        nonlocal count
        if level == n - 1:
            t = den - num
            if t >= 0 and den // _gcd(t, den) <= h:
                count += 1
            return
        for s, r in pairs:
            rec(level + 1, num * r + s * den, den * r)

    for i in leading:
        s, r = pairs[i]
        rec(1, s, r)
    return count


def count_L_naive(n: int, h: int, *, workers: int = 1, budget: int | None = None) -> CountRecord:
    """L_n(H) by enumerating n-1 fractions and testing the exact residual."""
    _validate_nh(n, h)
    size = len(farey_pairs(h))
    predicted = size ** (n - 1)
    _require_budget(predicted, budget, "naive")
    start = time.perf_counter()
    if n == 1:
        count = 1  # residual 1 = 1/1 always has height 1 <= h
    else:
        tasks = [(n, h, sl) for sl in round_robin(range(size), workers)]
        count = sum(run_tasks(_naive_slice, tasks, workers))
    return CountRecord(
        method="naive",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=predicted,
        elapsed_s=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# L_n(H): fast method (admissible denominators + numerator scan)
# ---------------------------------------------------------------------------

def _fast_numerators(rs: tuple[int, ...], r_last: int, cop) -> tuple[int, int]:
    """Solutions and numerator probes for one admissible vector, general n."""
    den = 1
    for r in rs:
        den *= r
    sols = 0
    probes = 0
    weights = [den // r for r in rs]

    def rec(j: int, num: int):
        nonlocal sols, probes
        if j == len(rs):
            t = den - num
            if t >= 0 and den // _gcd(t, den) == r_last:
                sols += 1
            return
        w = weights[j]
        for s in cop[rs[j]]:
            probes += 1
            rec(j + 1, num + s * w)

    rec(0, 0)
    return sols, probes


def _fast_slice(args) -> tuple[int, int, int]:
    n, h, leading, prune, budget = args
    cop = _coprime_numerators(h)
    count = 0
    filter_nodes = 0
    numer = 0
    gcd = _gcd

    def check_budget():
        if budget is not None and filter_nodes + numer > budget:
            raise ResourceError(
                f"candidates exceeded budget {budget} during the numerator phase"
            )

    if n == 1:
        for r in leading:
            filter_nodes += 1
            if r == 1:
                count += 1
        return count, filter_nodes, numer

    if n == 2:
        for r1 in leading:
            filter_nodes += 1
            c1 = cop[r1]
            for r2 in range(1, h + 1):
                filter_nodes += 1
                if r2 % r1 == 0 and r1 % r2 == 0:
                    for s in c1:
                        numer += 1
                        if r1 // gcd(r1 - s, r1) == r2:
                            count += 1
                    check_budget()
        return count, filter_nodes, numer

    if n == 3:
        for r1 in leading:
            filter_nodes += 1
            c1 = cop[r1]
            for r2 in range(1, h + 1):
                filter_nodes += 1
                d2 = _lcm(r1 // gcd(r1, r2), r2 // gcd(r2, r1))
                if prune and d2 > h:
                    continue
                p2 = r1 * r2
                c2 = cop[r2]
                for r3 in range(1, h + 1):
                    filter_nodes += 1
                    if r3 % d2 == 0 and p2 % r3 == 0:
                        for s1 in c1:
                            numer += 1
                            base = p2 - s1 * r2
                            for s2 in c2:
                                numer += 1
                                t = base - s2 * r1
                                if t >= 0 and p2 // gcd(t, p2) == r3:
                                    count += 1
                        check_budget()
        return count, filter_nodes, numer

    # general n
    suffix = [h ** (n - k) for k in range(n + 1)]

    def walk(k: int, rs: tuple[int, ...], prod: int, d: int):
        nonlocal count, filter_nodes, numer
        if k == n - 1:
            for r in range(1, h + 1):
                filter_nodes += 1
                if r % d == 0 and prod % r == 0:
                    sols, probes = _fast_numerators(rs, r, cop)
                    count += sols
                    numer += probes
                    check_budget()
            return
        for r in range(1, h + 1):
            filter_nodes += 1
            nd = _lcm(d // gcd(d, r), r // gcd(r, prod))
            if prune and nd > suffix[k + 1]:
                continue
            walk(k + 1, rs + (r,), prod * r, nd)

    for r1 in leading:
        filter_nodes += 1
        if prune and r1 > suffix[1]:
            continue
        walk(1, (r1,), r1, r1)
    return count, filter_nodes, numer


def count_L_fast(
    n: int,
    h: int,
    *,
    workers: int = 1,
    budget: int | None = None,
    prune: bool = True,
) -> CountRecord:
    """L_n(H) via the admissibility filter and per-vector numerator scan.

    candidates_examined splits into the filter phase (denominator prefix
    nodes visited) and the numerator phase (numerator prefixes probed);
    see the details dict.
    """
    _validate_nh(n, h)
    predicted = sum(h**k for k in range(1, n + 1))
    _require_budget(predicted, budget, "fast filter")
    start = time.perf_counter()
    leading = list(range(1, h + 1))
    tasks = [
        (n, h, sl, prune, budget) for sl in round_robin(leading, workers)
    ]
    parts = run_tasks(_fast_slice, tasks, workers)
    count = sum(p[0] for p in parts)
    filter_nodes = sum(p[1] for p in parts)
    numer = sum(p[2] for p in parts)
    _require_budget(filter_nodes + numer, budget, "fast total")
    return CountRecord(
        method="fast",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=filter_nodes + numer,
        elapsed_s=time.perf_counter() - start,
        details={
            "filter_candidates": filter_nodes,
            "numerator_candidates": numer,
        },
    )


def count_L(n: int, h: int, method: str = "fast", **kw) -> CountRecord:
    """Dispatch to one of the three L_n(H) routes."""
    if method == "brute":
        return count_L_brute(n, h, **kw)
    if method == "naive":
        return count_L_naive(n, h, **kw)
    if method == "fast":
        return count_L_fast(n, h, **kw)
    raise DomainError(f"unknown method {method!r}")


def count_S(n: int, h: int, method: str = "fast", **kw) -> CountRecord:
    """S_n(H) = L_n(H)^n: the row constraints are independent."""
    rec = count_L(n, h, method, **kw)
    return CountRecord(
        method=rec.method,
        parameters={"n": n, "h": h, "quantity": "S"},
        count=rec.count**n,
        candidates_examined=rec.candidates_examined,
        elapsed_s=rec.elapsed_s,
        details=dict(rec.details, l_count=rec.count),
    )


# ---------------------------------------------------------------------------
# N_n(a; B0, B): box-constrained linear equation, coprimality dropped
# ---------------------------------------------------------------------------

def _n_brute_slice(args) -> int:
    a0, a, r_ranges, s_ranges, leading = args
    n = len(a)
    count = 0
    rest = [range(x.start, x.stop) for x in r_ranges[1:]]
    s_iters = [range(x.start, x.stop) for x in s_ranges]
    for r1 in leading:
        for r_rest in product(*rest):
            r = (r1,) + r_rest
            p = 1
            for rj in r:
                p *= rj
            w = [a[j] * (p // r[j]) for j in range(n)]
            target = a0 * p
            for s in product(*s_iters):
                acc = 0
                for j in range(n):
                    acc += w[j] * s[j]
                if acc == target:
                    count += 1
    return count


def count_N_brute(
    coeffs: CoefficientVector,
    box0: IntegerBox,
    box: IntegerBox,
    *,
    workers: int = 1,
    budget: int | None = None,
) -> CountRecord:
    """Exhaustive N_n(a; B0, B) over both boxes with exact arithmetic."""
    n = coeffs.n
    if box0.n != n or box.n != n:
        raise DomainError("box dimensions must match the coefficient count")
    if any(b < 0 for b in box0.offsets):
        raise DomainError("denominator box must hold positive integers")
    predicted = 1
    for h in box0.lengths:
        predicted *= h
    for h in box.lengths:
        predicted *= h
    _require_budget(predicted, budget, "box")
    start = time.perf_counter()
    r_ranges = box0.ranges()
    s_ranges = box.ranges()
    leading = list(r_ranges[0])
    tasks = [
        (coeffs.a0, coeffs.a, r_ranges, s_ranges, sl)
        for sl in round_robin(leading, workers)
    ]
    count = sum(run_tasks(_n_brute_slice, tasks, workers))
    return CountRecord(
        method="brute",
        parameters={
            "coeffs": (coeffs.a0,) + coeffs.a,
            "box0": (box0.offsets, box0.lengths),
            "box": (box.offsets, box.lengths),
        },
        count=count,
        candidates_examined=predicted,
        elapsed_s=time.perf_counter() - start,
    )


def _ceil_div(a: int, b: int) -> int:
    # b > 0
    return -((-a) // b)


def _count_linear_pairs(A: int, B: int, C: int, xr: range, yr: range) -> int:
    """Integer points (x, y) in the given ranges with A*x + B*y = C; A, B nonzero."""
    g = _gcd(abs(A), abs(B))
    if C % g:
        return 0
    A, B, C = A // g, B // g, C // g
    if A < 0:
        A, B, C = -A, -B, -C
    # y in range  <=>  A*x within [Tl, Th]
    yl, yh = yr.start, yr.stop - 1
    if B > 0:
        tl, th = C - B * yh, C - B * yl
    else:
        tl, th = C - B * yl, C - B * yh
    lo = max(xr.start, _ceil_div(tl, A))
    hi = min(xr.stop - 1, th // A)
    if hi < lo:
        return 0
    m = abs(B)
    if m == 1:
        return hi - lo + 1
    x0 = (C * pow(A % m, -1, m)) % m
    return (hi - x0) // m - (lo - 1 - x0) // m


def count_N_fast(
    coeffs: CoefficientVector,
    box0: IntegerBox,
    box: IntegerBox,
    *,
    budget: int | None = None,
) -> CountRecord:
    """N_n(a; B0, B) by solving the last two numerators in closed form.

    Enumerates the denominator box and the first n-2 numerators, then
    counts the final numerator pair on an arithmetic progression.  Exact;
    cross-checked against count_N_brute in the test suite.
    """
    n = coeffs.n
    if box0.n != n or box.n != n:
        raise DomainError("box dimensions must match the coefficient count")
    if any(b < 0 for b in box0.offsets):
        raise DomainError("denominator box must hold positive integers")
    predicted = 1
    for h in box0.lengths:
        predicted *= h
    for h in box.lengths[: max(0, n - 2)]:
        predicted *= h
    _require_budget(predicted, budget, "solver")
    start = time.perf_counter()
    a0, a = coeffs.a0, coeffs.a
    r_ranges = box0.ranges()
    s_ranges = box.ranges()
    count = 0
    probes = 0
    if n == 1:
        sr = s_ranges[0]
        for r in r_ranges[0]:
            probes += 1
            num = a0 * r
            if num % a[0] == 0 and (num // a[0]) in sr:
                count += 1
    else:
        prefix_ranges = s_ranges[: n - 2]
        xr, yr = s_ranges[n - 2], s_ranges[n - 1]
        for r in product(*r_ranges):
            d0 = 1
            for rj in r[: n - 2]:
                d0 *= rj
            w = [a[j] * (d0 // r[j]) for j in range(n - 2)]
            rx, ry = r[n - 2], r[n - 1]
            Abase = a[n - 2] * ry
            Bbase = a[n - 1] * rx
            for s_pre in product(*prefix_ranges):
                probes += 1
                c_num = a0 * d0
                for j in range(n - 2):
                    c_num -= w[j] * s_pre[j]
                count += _count_linear_pairs(
                    Abase * d0, Bbase * d0, c_num * rx * ry, xr, yr
                )
    return CountRecord(
        method="solver",
        parameters={
            "coeffs": (coeffs.a0,) + coeffs.a,
            "box0": (box0.offsets, box0.lengths),
            "box": (box.offsets, box.lengths),
        },
        count=count,
        candidates_examined=probes,
        elapsed_s=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Empirical regression against the product-of-lengths bound
# ---------------------------------------------------------------------------

@dataclass
class BoundRegressionReport:
    """Max observed N / (H_1..H_n (log(H+2))^(2^n - 1)) over sampled instances."""

    n: int
    samples: int
    h_max: int
    coeff_bound: int
    offset_bound: int
    seed: int
    max_ratio: float
    worst: dict
    ratios: tuple[float, ...]
    threshold: float | None = None

    @property
    def exceeded(self) -> bool | None:
        if self.threshold is None:
            return None
        return self.max_ratio > self.threshold


def bound_ratio(
    coeffs: CoefficientVector, box0: IntegerBox, box: IntegerBox
) -> tuple[int, float]:
    """Exact count and its ratio to the reference product-log envelope.

    log(H+2) avoids the log 1 singularity at H = 1; the o(1) exponent
    drift is not modeled.
    """
    rec = count_N_fast(coeffs, box0, box)
    h = max(box0.lengths)
    denom = 1
    for hj in box0.lengths:
        denom *= hj
    envelope = denom * log(h + 2) ** (2**coeffs.n - 1)
    return rec.count, rec.count / envelope


def check_bound_regression(
    n: int = 2,
    samples: int = 200,
    h_max: int = 40,
    *,
    coeff_bound: int = 10,
    offset_bound: int = 100,
    seed: int = 20260810,
    threshold: float | None = None,
) -> BoundRegressionReport:
    """Sample random instances and report the maximum bound ratio.

    This is a frozen-seed regression against a calibrated ceiling, not a
    verification of the asymptotic statement.
    """
    if n < 1:
        raise DomainError("dimension must be positive")
    rng = random.Random(seed)
    max_ratio = -1.0
    worst: dict = {}
    ratios = []
    for _ in range(samples):
        lengths = tuple(rng.randint(1, h_max) for _ in range(n))
        a0 = rng.randint(-coeff_bound, coeff_bound)
        a = []
        while len(a) < n:
            x = rng.randint(-coeff_bound, coeff_bound)
            if x != 0:
                a.append(x)
        offsets = tuple(rng.randint(-offset_bound, offset_bound) for _ in range(n))
        coeffs = CoefficientVector(a0, tuple(a))
        box0 = IntegerBox((0,) * n, lengths)
        box = IntegerBox(offsets, lengths)
        count, ratio = bound_ratio(coeffs, box0, box)
        ratios.append(ratio)
        if ratio > max_ratio:
            max_ratio = ratio
            worst = {
                "coeffs": (a0,) + tuple(a),
                "lengths": lengths,
                "offsets": offsets,
                "count": count,
            }
    return BoundRegressionReport(
        n=n,
        samples=samples,
        h_max=h_max,
        coeff_bound=coeff_bound,
        offset_bound=offset_bound,
        seed=seed,
        max_ratio=max_ratio,
        worst=worst,
        ratios=tuple(ratios),
        threshold=threshold,
    )


# ---------------------------------------------------------------------------
# Constructive lower bounds
# ---------------------------------------------------------------------------

def _coprime_upto(limit: int, r: int) -> list[int]:
    return [s for s in range(1, limit + 1) if _gcd(s, r) == 1]


def lower_bound_construction(
    n: int, h: int, *, budget: int | None = None
) -> CountRecord:
    """Count the solution family built from a shared denominator r <= H.

    For each r, the first n-1 numerators run over [1, floor(r/(n-1))]
    coprime to r and the last numerator balances the sum; all resulting
    tuples are valid and pairwise distinct, so the count is a lower bound
    for L_n(H).
    """
    if n < 2:
        raise DomainError("the construction needs at least two summands")
    if h < 1:
        raise DomainError("height bound must be positive")
    predicted = sum((r // (n - 1)) ** (n - 1) for r in range(1, h + 1))
    _require_budget(predicted, budget, "construction")
    start = time.perf_counter()
    count = 0
    candidates = 0
    for r in range(1, h + 1):
        ell = r // (n - 1)
        c = len(_coprime_upto(ell, r))
        count += c ** (n - 1)
        candidates += ell + c ** (n - 1)
    return CountRecord(
        method="construction",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=candidates,
        elapsed_s=time.perf_counter() - start,
    )


def iter_lower_bound_solutions(n: int, h: int) -> Iterator[tuple[Fraction, ...]]:
    """Yield the constructed solution tuples as canonical fractions."""
    if n < 2:
        raise DomainError("the construction needs at least two summands")
    for r in range(1, h + 1):
        ell = r // (n - 1)
        coset = _coprime_upto(ell, r)
        for combo in product(coset, repeat=n - 1):
            s_last = r - sum(combo)
            yield tuple(reduce(s, r) for s in combo) + (reduce(s_last, r),)


# ---------------------------------------------------------------------------
# Doubly stochastic counts
# ---------------------------------------------------------------------------

def _row_tail(row_pairs, h: int):
    """Last entry completing a row of reduced pairs to sum 1, or None."""
    num, den = 0, 1
    for s, r in row_pairs:
        num = num * r + s * den
        den *= r
    t = den - num
    if t < 0:
        return None
    g = _gcd(t, den)
    tn, td = t // g, den // g
    if td > h:
        return None
    return tn, td


def _last_row(rows, n: int, h: int):
    """Bottom row forced by column sums, validated entrywise, or None."""
    out = []
    for j in range(n):
        tail = _row_tail([rows[i][j] for i in range(n - 1)], h)
        if tail is None:
            return None
        out.append(tail)
    return out


def _doubly_slice(args) -> int:
    n, h, leading = args
    pairs = farey_pairs(h)
    free = (n - 1) * (n - 1)
    count = 0

    def complete(grid) -> bool:
        rows = []
        for i in range(n - 1):
            row = list(grid[i * (n - 1) : (i + 1) * (n - 1)])
            tail = _row_tail(row, h)
            if tail is None:
                return False
            rows.append(row + [tail])
        return _last_row(rows, n, h) is not None

    def rec(cell: int, grid: tuple):
        nonlocal count
        if cell == free:
            if complete(grid):
                count += 1
            return
        for p in pairs:
            rec(cell + 1, grid + (p,))

    for i in leading:
        rec(1, (pairs[i],))
    return count


def count_doubly_brute(
    n: int, h: int, *, workers: int = 1, budget: int | None = None
) -> CountRecord:
    """Exact count of n-by-n doubly stochastic matrices over the order-H set.

    Enumerates the free top-left (n-1)x(n-1) block; the last column and row
    are forced by the sum constraints and validated for membership.
    """
    _validate_nh(n, h)
    if n == 1:
        return CountRecord(
            method="brute",
            parameters={"n": n, "h": h},
            count=1,
            candidates_examined=1,
            elapsed_s=0.0,
        )
    size = len(farey_pairs(h))
    free = (n - 1) * (n - 1)
    predicted = size**free
    _require_budget(predicted, budget, "doubly brute")
    start = time.perf_counter()
    tasks = [(n, h, sl) for sl in round_robin(range(size), workers)]
    count = sum(run_tasks(_doubly_slice, tasks, workers))
    return CountRecord(
        method="brute",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=predicted,
        elapsed_s=time.perf_counter() - start,
    )


def iter_doubly_brute_matrices(n: int, h: int) -> Iterator[tuple[tuple[Fraction, ...], ...]]:
    """Yield every doubly stochastic matrix over the order-H set, brute force."""
    _validate_nh(n, h)
    if n == 1:
        yield ((Fraction(1, 1),),)
        return
    pairs = farey_pairs(h)
    free = (n - 1) * (n - 1)
    for grid in product(pairs, repeat=free):
        rows = []
        good = True
        for i in range(n - 1):
            row = list(grid[i * (n - 1) : (i + 1) * (n - 1)])
            tail = _row_tail(row, h)
            if tail is None:
                good = False
                break
            rows.append(row + [tail])
        if not good:
            continue
        last = _last_row(rows, n, h)
        if last is None:
            continue
        rows.append(last)
        yield tuple(tuple(Fraction(s, r) for s, r in row) for row in rows)


def doubly_lower_construction(
    n: int, h: int, *, budget: int | None = None
) -> CountRecord:
    """Count matrices from the shared-denominator row construction.

    The first n-1 rows reuse the unit-sum lower-bound construction at a
    common denominator r; the bottom row balances the columns.  Completions
    with a negative entry (possible for n >= 3) are not counted, so every
    counted matrix is doubly stochastic with entries of height <= H.
    """
    if n < 2:
        raise DomainError("the construction needs at least two rows")
    if h < 1:
        raise DomainError("height bound must be positive")
    predicted = sum(
        (r // (n - 1)) ** ((n - 1) * (n - 1)) for r in range(1, h + 1)
    )
    _require_budget(predicted, budget, "doubly construction")
    start = time.perf_counter()
    produced = 0
    count = 0
    candidates = 0
    for r in range(1, h + 1):
        ell = r // (n - 1)
        coset = _coprime_upto(ell, r)
        candidates += ell
        for choice in product(coset, repeat=(n - 1) * (n - 1)):
            produced += 1
            candidates += 1
            rows = []
            for i in range(n - 1):
                ss = choice[i * (n - 1) : (i + 1) * (n - 1)]
                s_last = r - sum(ss)
                row = [reduce(s, r) for s in ss] + [reduce(s_last, r)]
                rows.append([(f.numerator, f.denominator) for f in row])
            if _last_row(rows, n, h) is not None:
                count += 1
    return CountRecord(
        method="construction",
        parameters={"n": n, "h": h},
        count=count,
        candidates_examined=candidates,
        elapsed_s=time.perf_counter() - start,
        details={"produced": produced},
    )


def iter_doubly_lower_matrices(n: int, h: int) -> Iterator[tuple[tuple[Fraction, ...], ...]]:
    """Yield the valid matrices produced by the row construction."""
    if n < 2:
        raise DomainError("the construction needs at least two rows")
    for r in range(1, h + 1):
        ell = r // (n - 1)
        coset = _coprime_upto(ell, r)
        for choice in product(coset, repeat=(n - 1) * (n - 1)):
            rows = []
            for i in range(n - 1):
                ss = choice[i * (n - 1) : (i + 1) * (n - 1)]
                s_last = r - sum(ss)
                row = [reduce(s, r) for s in ss] + [reduce(s_last, r)]
                rows.append([(f.numerator, f.denominator) for f in row])
            last = _last_row(rows, n, h)
            if last is None:
                continue
            rows.append(last)
            yield tuple(tuple(Fraction(s, d) for s, d in row) for row in rows)
