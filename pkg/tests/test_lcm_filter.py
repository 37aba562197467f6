"""Admissibility filter against brute-force enumeration."""

from itertools import permutations, product
from math import lcm

import pytest

from fareylab import lcm_filter as lf
from fareylab.counting import iter_L_solutions_brute
from fareylab.errors import DomainError, ResourceError
from fareylab.scaling import fit_loglog


def admissible_oracle(v):
    prod = 1
    for r in v:
        prod *= r
    return prod % lcm(*(r * r for r in v)) == 0


def test_lcm_of_squares_examples():
    assert lf.lcm_of_squares((2, 2)) == 4
    assert lf.lcm_of_squares((2, 3)) == 36
    assert lf.lcm_of_squares((6, 10, 15)) == 900
    with pytest.raises(DomainError):
        lf.lcm_of_squares((0, 2))


def test_is_admissible_examples():
    for r in (1, 4, 9, 30):
        assert lf.is_admissible((r, r))
    assert not lf.is_admissible((2, 4))
    assert lf.is_admissible((6, 10, 15))
    assert lf.is_admissible((2, 2, 4))


def test_is_admissible_permutation_invariant():
    for v in product(range(1, 13), repeat=3):
        vals = {lf.is_admissible(p) for p in permutations(v)}
        assert len(vals) == 1
        assert vals.pop() == admissible_oracle(v)


def test_diagonal_always_admissible():
    for r in range(1, 1001):
        assert lf.is_admissible((r, r, r))


def test_enumerate_examples():
    assert list(lf.enumerate_admissible((2, 2))) == [(1, 1), (2, 2)]
    assert list(lf.enumerate_admissible((1, 1, 1))) == [(1, 1, 1)]
    assert list(lf.enumerate_admissible((4, 4))) == [(1, 1), (2, 2), (3, 3), (4, 4)]


@pytest.mark.parametrize(
    "bounds",
    [(6,), (6, 6), (2, 9), (6, 6, 6), (3, 5, 7), (8, 2, 4), (2, 2, 2, 2)],
)
def test_pruned_enumeration_matches_unpruned_and_oracle(bounds):
    pruned = list(lf.enumerate_admissible(bounds, prune=True))
    plain = list(lf.enumerate_admissible(bounds, prune=False))
    oracle = [
        v
        for v in product(*[range(1, b + 1) for b in bounds])
        if admissible_oracle(v)
    ]
    assert pruned == plain == oracle
    assert pruned == sorted(pruned)  # lexicographic, each exactly once


def test_count_J_examples():
    assert lf.count_J((100,)).count == 1
    for R in range(1, 41):
        for R2 in (R, R + 3, 2 * R):
            assert lf.count_J((R, R2)).count == min(R, R2)
    assert (2, 2, 4) in set(lf.enumerate_admissible((4, 4, 4)))


def test_count_J_counts_match_enumeration():
    for bounds in ((7,), (7, 7), (5, 6, 7), (12, 12, 12)):
        rec = lf.count_J(bounds)
        stream = lf.enumerate_admissible(bounds)
        assert rec.count == len(list(stream))
        assert rec.candidates_examined == stream.candidates_examined
        assert rec.count <= rec.candidates_examined


def test_count_J_worker_partitioning_identical():
    for bounds in ((30, 30), (10, 10, 10)):
        base = lf.count_J(bounds, workers=1)
        for workers in (2, 3, 4):
            other = lf.count_J(bounds, workers=workers)
            assert other.count == base.count
            assert other.candidates_examined == base.candidates_examined


def test_count_J_budget():
    with pytest.raises(ResourceError):
        lf.count_J((100, 100), budget=99)


def test_stream_is_single_consumer_with_work_counter():
    stream = lf.enumerate_admissible((4, 4))
    it = iter(stream)
    assert next(it) == (1, 1)
    rest = list(it)  # resumes from the cursor
    assert rest == [(2, 2), (3, 3), (4, 4)]
    assert stream.candidates_examined == 4 + 16
    with pytest.raises(RuntimeError):
        iter(stream)


def test_solution_denominators_are_admissible():
    for n, h_top in ((2, 12), (3, 8)):
        for h in range(1, h_top + 1):
            for tup in iter_L_solutions_brute(n, h):
                dens = tuple(f.denominator for f in tup)
                assert lf.is_admissible(dens), (h, tup)


def test_J3_growth_slope_band():
    points = [(R, lf.count_J((R, R, R)).count) for R in (16, 32, 64, 128)]
    fit = fit_loglog(points)
    assert 1.2 <= fit.slope <= 2.0, fit.slope
