"""Named property suites behind the `verify` subcommand.

Each suite bundles the library's cross-route invariants at small frozen
parameters, reports one line per property, and fails loudly on any
mismatch.  These are quick gates, not the full acceptance run.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith, counting, expsum, rationals


@dataclass
class PropertyCheck:
    name: str
    passed: bool
    detail: str


def _check(name: str, passed: bool, detail: str) -> PropertyCheck:
    return PropertyCheck(name=name, passed=bool(passed), detail=detail)


def _oracle_suite() -> list[PropertyCheck]:
    out = []
    mismatches = []
    for n, h_top in ((2, 16), (3, 8)):
        prev = None
        for h in range(1, h_top + 1):
            counts = {
                m: counting.count_L(n, h, m).count for m in ("brute", "naive", "fast")
            }
            if len(set(counts.values())) != 1:
                mismatches.append((n, h, counts))
            c = counts["fast"]
            if prev is not None and c < prev:
                mismatches.append((n, h, "monotonicity", counts))
            prev = c
    out.append(
        _check(
            "three-method agreement and monotonicity (n=2 H<=16, n=3 H<=8)",
            not mismatches,
            f"mismatches={mismatches!r}" if mismatches else "all equal",
        )
    )
    bad = [
        h
        for h in range(1, 51)
        if counting.count_L_fast(2, h).count != rationals.farey_unit_count(h)
    ]
    out.append(
        _check(
            "L_2(H) equals the unit-interval Farey count (H<=50)",
            not bad,
            f"failed at H={bad}" if bad else "closed form matches",
        )
    )
    s = counting.count_S(3, 2, "brute")
    out.append(
        _check(
            "S_3(2) equals L_3(2)^3",
            s.count == 216,
            f"S_3(2)={s.count}",
        )
    )
    return out


def _identity_suite() -> list[PropertyCheck]:
    out = []
    worst = 0.0
    failures = 0
    for coeffs, p, box0, box in expsum.random_orthogonality_instances(
        30, seed=1107, n_max=2, p_max=101, max_len=5
    ):
        m = expsum.congruence_count(coeffs, p, box0, box)
        res = expsum.orthogonality_check(coeffs, p, box0, box)
        worst = max(worst, res)
        if res >= 1e-6 * max(1, m):
            failures += 1
    out.append(
        _check(
            "orthogonality identity residual < 1e-6 (30 seeded instances)",
            failures == 0,
            f"worst residual {worst:.3e}",
        )
    )
    table = arith.build_sieve(2000)
    bad = [
        r
        for r in range(1, 2001)
        if sum(
            arith.mobius(d) * (r // d) for d in arith.divisors(r)
        ) != int(table.phi[r])
    ]
    out.append(
        _check(
            "sum over divisors of mu(d) r/d equals phi(r) (r<=2000)",
            not bad,
            f"failed at r={bad[:5]}" if bad else "identity exact",
        )
    )
    bad = [
        r
        for r in range(1, 2001)
        if int(table.phi[r]) != arith.euler_phi(r) or int(table.mu[r]) != arith.mobius(r)
    ]
    out.append(
        _check(
            "sieve table matches pointwise phi and mu (r<=2000)",
            not bad,
            f"failed at r={bad[:5]}" if bad else "tables agree",
        )
    )
    bad = []
    for h in range(1, 101):
        if rationals.farey_unit_count(h) != len(rationals.farey_pairs(h)):
            bad.append(h)
    out.append(
        _check(
            "farey_unit_count equals direct enumeration (H<=100)",
            not bad,
            f"failed at H={bad}" if bad else "counts agree",
        )
    )
    return out


def _construction_suite() -> list[PropertyCheck]:
    out = []
    problems = []
    for n in (2, 3):
        for h in range(1, 9):
            rec = counting.lower_bound_construction(n, h)
            sols = list(counting.iter_lower_bound_solutions(n, h))
            if len(sols) != rec.count or len(set(sols)) != rec.count:
                problems.append((n, h, "count/distinctness"))
                continue
            l_count = counting.count_L_fast(n, h).count
            if rec.count > l_count:
                problems.append((n, h, "containment"))
            for tup in sols:
                acc = rationals.Accumulator.zero()
                for f in tup:
                    acc = rationals.accumulate(acc, 1, f)
                if (acc.numerator, acc.denominator) != (1, 1):
                    problems.append((n, h, "invalid tuple", tup))
                    break
                if any(not rationals.in_farey(f, h) for f in tup):
                    problems.append((n, h, "height", tup))
                    break
    out.append(
        _check(
            "lower-bound tuples valid, distinct, contained (n<=3, H<=8)",
            not problems,
            f"problems={problems[:3]!r}" if problems else "all tuples check out",
        )
    )
    problems = []
    for n, h_top in ((2, 10), (3, 3)):
        for h in range(1, h_top + 1):
            rec = counting.doubly_lower_construction(n, h)
            mats = list(counting.iter_doubly_lower_matrices(n, h))
            if len(mats) != rec.count:
                problems.append((n, h, "emission count"))
            brute = counting.count_doubly_brute(n, h).count
            if rec.count > brute:
                problems.append((n, h, "containment"))
            for m in mats:
                if not _is_doubly_stochastic(m, h):
                    problems.append((n, h, "invalid matrix"))
                    break
    out.append(
        _check(
            "doubly stochastic construction valid and contained (n<=3, tiny H)",
            not problems,
            f"problems={problems[:3]!r}" if problems else "all matrices check out",
        )
    )
    return out


def _is_doubly_stochastic(matrix, h: int) -> bool:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            return False
        for f in row:
            if not rationals.in_farey(f, h):
                return False
    for lines in (matrix, tuple(zip(*matrix))):
        for line in lines:
            acc = rationals.Accumulator.zero()
            for f in line:
                acc = rationals.accumulate(acc, 1, f)
            if (acc.numerator, acc.denominator) != (1, 1):
                return False
    return True


def _expsum_suite() -> list[PropertyCheck]:
    out = []
    dom = expsum.ColumnDomain.rectangle(5, 4)
    problems = []
    for p in (7, 11, 31, 101):
        for a in (1, 2, 3, p - 1):
            s1 = expsum.ratio_sum(a, p, dom)
            s2 = expsum.ratio_sum(p - a, p, dom)
            if abs(s2 - s1.conjugate()) > 1e-9:
                problems.append((p, a, "conjugate"))
            if abs(s1) > dom.n_points() + 1e-9:
                problems.append((p, a, "magnitude"))
    out.append(
        _check(
            "ratio-sum conjugate symmetry and magnitude bound",
            not problems,
            f"problems={problems!r}" if problems else "symmetry holds",
        )
    )
    problems = []
    for p in (11, 101):
        for a in (1, 2, 7):
            seen = {
                expsum.balanced_residue(a, u, p) for u in range(1, p)
            }
            if len(seen) != p - 1:
                problems.append((p, a))
    out.append(
        _check(
            "balanced residues biject columns (p in {11, 101})",
            not problems,
            f"problems={problems!r}" if problems else "bijection holds",
        )
    )
    dom = expsum.ColumnDomain.rectangle(6, 6)
    stats = expsum.moment_over_primes(1, 50, 1, dom)
    term_sum = sum(mag for _, mag in stats.per_prime)
    out.append(
        _check(
            "first moment equals per-prime magnitude sum (q=50)",
            abs(stats.total - term_sum) < 1e-9,
            f"delta={abs(stats.total - term_sum):.2e}",
        )
    )
    single = expsum.ColumnDomain(1, 0, ((0, 0),))
    stats = expsum.moment_over_primes(3, 20, 2, single)
    window = [p for p in arith.primes_in_window(20).primes if p != 3]
    out.append(
        _check(
            "single-point domain counts coprime window primes",
            abs(stats.total - len(window)) < 1e-9,
            f"total={stats.total}, primes={len(window)}",
        )
    )
    return out


SUITES = {
    "oracle": _oracle_suite,
    "identity": _identity_suite,
    "construction": _construction_suite,
    "expsum": _expsum_suite,
}


def run_suite(name: str) -> list[PropertyCheck]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
