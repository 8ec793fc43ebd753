import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from ._logger import get_logger

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "LEXKIT_THREADS"


def thread_count() -> int:
    """Worker count taken from ``LEXKIT_THREADS``; 1 when unset or invalid."""
    raw = os.getenv(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        get_logger().warning(f"ignoring {THREADS_ENV}={raw!r}: not an integer")
        return 1
    return max(1, value)


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """
    Apply ``fn`` to every item, possibly in parallel, keeping input order.

    Results are always returned in submission order, so callers that scan
    for the first failure see the same answer for any thread count.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def first_match(
    fn: Callable[[T], R | None], items: Iterable[T], chunk_size: int = 64
) -> tuple[int, tuple[T, R] | None]:
    """
    Scan ``items`` for the first one whose ``fn`` result is not None.

    Items are evaluated chunk by chunk; within a chunk evaluation may run in
    parallel, but the earliest item always wins.

    Returns:
        ``(visited, match)`` where ``visited`` counts evaluated items and
        ``match`` is ``(item, result)`` or None.
    """
    chunk: list[T] = []
    visited = 0
    for item in items:
        chunk.append(item)
        if len(chunk) >= chunk_size:
            visited, match = _scan(fn, chunk, visited)
            if match is not None:
                return visited, match
            chunk = []
    if chunk:
        return _scan(fn, chunk, visited)
    return visited, None


def _scan(fn, chunk, visited):
    for item, result in zip(chunk, ordered_map(fn, chunk)):
        visited += 1
        if result is not None:
            return visited, (item, result)
    return visited, None
