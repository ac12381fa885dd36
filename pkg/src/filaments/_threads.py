"""Optional thread fan-out for the quadratic nonlocal kernels.

FILAMENT_THREADS caps the worker count: unset or 1 means serial, 0 means
one worker per CPU. Work is split into disjoint target chunks so results
are bit-identical regardless of scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("FILAMENT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FILAMENT_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"FILAMENT_THREADS must be >= 0, got {n}")
    if n == 0:
        n = os.cpu_count() or 1
    return n


def map_chunks(fn, n_items: int):
    """Run fn(start, stop) over disjoint index ranges covering [0, n_items).

    Serial when the thread cap is 1; each call writes only its own slice,
    so the result does not depend on evaluation order.
    """
    workers = min(thread_count(), max(n_items, 1))
    if workers <= 1 or n_items < 2:
        fn(0, n_items)
        return
    bounds = [n_items * i // workers for i in range(workers + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(fn, lo, hi)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for fut in futures:
            fut.result()
