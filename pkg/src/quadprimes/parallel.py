"""Deterministic fan-out: ordered results whatever the worker count."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "QUADPRIMES_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi) into at most ``parts`` contiguous non-empty chunks."""
    n = hi - lo
    if n <= 0:
        return []
    parts = max(1, min(parts, n))
    q, rem = divmod(n, parts)
    out, a = [], lo
    for i in range(parts):
        b = a + q + (1 if i < rem else 0)
        out.append((a, b))
        a = b
    return out


def parallel_map(fn: Callable[[T], R], tasks: Sequence[T] | Iterable[T], workers: int = 1) -> list[R]:
    """``[fn(t) for t in tasks]``, optionally on a process pool; order preserved."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))
