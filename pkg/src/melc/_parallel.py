"""Shared thread-pool mapping for the per-angle evaluation loops.

Worker count comes from the MELC_THREADS environment variable; 0 or unset
means one worker per CPU. Results keep the input order, so callers are
deterministic regardless of the pool size.
"""

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["worker_count", "map_ordered"]


def worker_count() -> int:
    raw = os.environ.get("MELC_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MELC_THREADS must be an integer, got {raw!r}")
    if value < 0:
        raise ValueError("MELC_THREADS must be nonnegative")
    if value == 0:
        return os.cpu_count() or 1
    return value


def map_ordered(fn, items):
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
