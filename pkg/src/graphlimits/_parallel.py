"""Order-preserving map over replication indices, optionally multi-process.

Callables handed to :func:`pmap` must be picklable (module-level functions
or ``functools.partial`` over them) and must derive any randomness from the
replication index, so the result is identical for every worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def pmap(fn: Callable[[int], object], count: int, workers: int = 1) -> Sequence:
    if count <= 0:
        return []
    if workers is None or workers <= 1 or count == 1:
        return [fn(i) for i in range(count)]
    chunk = max(1, count // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count), chunksize=chunk))
