"""Denominator admissibility: the congruence r_1...r_n = 0 mod lcm of the
squared components, its streaming enumeration over a box, and the exact
admissible-vector counts it induces.

A vector is admissible iff every squared component divides the product of
all components.  The streaming enumerator maintains, per prefix, the
residual divisor still owed by the unseen suffix; a subtree is pruned when
that residual exceeds the largest possible suffix product, which cannot
remove any admissible vector.
"""

from __future__ import annotations

import time
from math import gcd as _gcd, lcm as _lcm
from typing import Iterator

from .errors import DomainError, ResourceError
from .parallel import round_robin, run_tasks
from .records import CountRecord


def _validate_vector(v: tuple[int, ...]) -> None:
    if len(v) < 1:
        raise DomainError("vector must have at least one component")
    if any(r < 1 for r in v):
        raise DomainError("components must be positive integers")


def lcm_of_squares(v: tuple[int, ...]) -> int:
    """Exact lcm of the squared components."""
    _validate_vector(v)
    return _lcm(*(r * r for r in v))


def is_admissible(v: tuple[int, ...]) -> bool:
    """Whether the component product is divisible by lcm_of_squares(v)."""
    _validate_vector(v)
    prod = 1
    for r in v:
        prod *= r
    return prod % lcm_of_squares(v) == 0


def _residual_after(d: int, prod: int, r: int) -> int:
    """Residual divisor owed by the suffix once r joins a prefix.

    d is the residual owed before r; prod the prefix product before r.
    Uses d | r*x  <=>  d/gcd(d, r) | x, applied to both the stripped old
    residual and the newcomer's own requirement r^2 | product.
    """
    return _lcm(d // _gcd(d, r), r // _gcd(r, prod))


class AdmissibleStream:
    """Single-consumer lexicographic stream of admissible vectors.

    ``candidates_examined`` counts every prefix node visited (leaves
    included) and is updated as the stream is consumed.
    """

    def __init__(self, bounds: tuple[int, ...], prune: bool = True):
        _validate_vector(bounds)
        self.bounds = tuple(bounds)
        self.prune = prune
        self.candidates_examined = 0
        self._consumed = False

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self._consumed:
            raise RuntimeError("admissible stream is single-consumer; create a new one")
        self._consumed = True
        return self._walk_all()

    def _walk_all(self) -> Iterator[tuple[int, ...]]:
        n = len(self.bounds)
        suffix = [1] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] * self.bounds[i]

        def walk(k: int, prefix: tuple[int, ...], prod: int, d: int):
            if k == n - 1:
                for r in range(1, self.bounds[k] + 1):
                    self.candidates_examined += 1
                    if r % d == 0 and prod % r == 0:
                        yield prefix + (r,)
                return
            for r in range(1, self.bounds[k] + 1):
                self.candidates_examined += 1
                nd = _residual_after(d, prod, r)
                if self.prune and nd > suffix[k + 1]:
                    continue
                yield from walk(k + 1, prefix + (r,), prod * r, nd)

        if n == 1:
            for r in range(1, self.bounds[0] + 1):
                self.candidates_examined += 1
                if r == 1:
                    yield (1,)
            return
        yield from walk(0, (), 1, 1)


def enumerate_admissible(bounds: tuple[int, ...], prune: bool = True) -> AdmissibleStream:
    """Stream of all admissible vectors with r_j <= bounds[j], lexicographic."""
    return AdmissibleStream(bounds, prune=prune)


def _count_slice(args) -> tuple[int, int]:
    bounds, prune, leading = args
    n = len(bounds)
    if n == 1:
        return sum(1 for r in leading if r == 1), len(leading)
    suffix = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * bounds[i]
    count = 0
    nodes = 0

    def walk(k: int, prod: int, d: int):
        nonlocal count, nodes
        if k == n - 1:
            bound = bounds[k]
            nodes += bound
            for r in range(1, bound + 1):
                if r % d == 0 and prod % r == 0:
                    count += 1
            return
        for r in range(1, bounds[k] + 1):
            nodes += 1
            nd = _residual_after(d, prod, r)
            if prune and nd > suffix[k + 1]:
                continue
            walk(k + 1, prod * r, nd)

    for r1 in leading:
        nodes += 1
        nd = _residual_after(1, 1, r1)
        if prune and nd > suffix[1]:
            continue
        walk(1, r1, nd)
    return count, nodes


def count_J(
    bounds: tuple[int, ...],
    *,
    prune: bool = True,
    workers: int = 1,
    budget: int | None = None,
) -> CountRecord:
    """Exact number of admissible vectors within the box, with work counters."""
    _validate_vector(bounds)
    predicted = 1
    for b in bounds:
        predicted *= b
    if budget is not None and predicted > budget:
        raise ResourceError(
            f"predicted {predicted} candidate vectors exceed budget {budget}"
        )
    start = time.perf_counter()
    leading = list(range(1, bounds[0] + 1))
    tasks = [(tuple(bounds), prune, sl) for sl in round_robin(leading, workers)]
    parts = run_tasks(_count_slice, tasks, workers)
    count = sum(p[0] for p in parts)
    nodes = sum(p[1] for p in parts)
    elapsed = time.perf_counter() - start
    return CountRecord(
        method="fast" if prune else "brute",
        parameters={"bounds": tuple(bounds), "prune": prune},
        count=count,
        candidates_examined=nodes,
        elapsed_s=elapsed,
    )
