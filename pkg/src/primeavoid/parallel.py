"""Internal parallelism, capped by the PRIME_AVOID_THREADS env var."""

import os
from concurrent.futures import ThreadPoolExecutor


def worker_cap() -> int:
    raw = os.environ.get("PRIME_AVOID_THREADS", "1").strip()
    try:
        cap = int(raw)
    except ValueError:
        raise RuntimeError(f"PRIME_AVOID_THREADS={raw!r} is not an integer") from None
    if cap < 1:
        raise RuntimeError(f"PRIME_AVOID_THREADS must be >= 1, got {cap}")
    return cap


def pmap(fn, items):
    """Ordered map over items, using at most worker_cap() threads."""
    items = list(items)
    cap = min(worker_cap(), len(items)) if items else 1
    if cap <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))
