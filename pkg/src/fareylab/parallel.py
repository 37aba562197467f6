"""Static round-robin partitioning over a leading enumeration coordinate.

Counting runs are pure reductions, so any partitioning of the leading
coordinate must merge to bit-identical totals.  Workers get slice
``values[i::workers]``; results come back in worker order and are merged
by the caller (integer addition, or ascending-key folds for floats).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def round_robin(values: Sequence, workers: int) -> list[list]:
    """Split values into ``workers`` interleaved slices, dropping empties."""
    if workers <= 1:
        return [list(values)]
    slices = [list(values[i::workers]) for i in range(workers)]
    return [s for s in slices if s]


def run_tasks(fn: Callable, tasks: list, workers: int) -> list:
    """Run ``fn`` over ``tasks``, in-process for one worker, else in a pool.

    Results are returned in task order so merges are deterministic.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))
