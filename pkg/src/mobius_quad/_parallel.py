import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "MOBIUS_QUAD_THREADS"


def thread_limit() -> int:
    """Worker cap from ``MOBIUS_QUAD_THREADS``; defaults to 1 (serial)."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def ordered_map(fn, items):
    """``list(map(fn, items))``, possibly threaded; result order is preserved."""
    items = list(items)
    workers = min(thread_limit(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
