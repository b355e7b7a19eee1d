"""Ordered, cancellable parallel search shared by the configuration checkers.

A search is a sequence of items; ``fn(plane, item, stop)`` returns a result
or None, and should poll ``stop()`` now and then.  The answer is the result
of the first item (in order) that has one, so it does not depend on the
number of workers.  Workers publish the lowest index that produced a result;
any task for a later index sees ``stop()`` turn true and gives up.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

POLL_EVERY = 2048
_INF = 2 ** 31 - 1

_plane = None
_best = None


class Aborted:
    """Marker returned by a task that stopped because an earlier one succeeded."""


ABORTED = Aborted()


def never() -> bool:
    return False


def _init(plane, best) -> None:
    global _plane, _best
    _plane, _best = plane, best


def _call(job):
    fn, index, item = job

    def stop() -> bool:
        return _best.value < index

    result = fn(_plane, item, stop)
    if result is not None and result is not ABORTED:
        with _best.get_lock():
            if index < _best.value:
                _best.value = index
    return result


def first_in_order(fn: Callable, plane, items: Sequence, jobs: int = 1):
    """Result of ``fn`` for the first item that has one, or None."""
    if jobs <= 1:
        for item in items:
            result = fn(plane, item, never)
            if result is not None:
                return result
        return None
    best = multiprocessing.Value("i", _INF)
    pool = ProcessPoolExecutor(max_workers=jobs, initializer=_init, initargs=(plane, best))
    try:
        futures = [pool.submit(_call, (fn, i, item)) for i, item in enumerate(items)]
        for future in futures:
            result = future.result()
            if result is not None and result is not ABORTED:
                return result
        return None
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


class Poller:
    """Cheap periodic check of a stop predicate inside tight loops."""

    __slots__ = ("stop", "count")

    def __init__(self, stop: Callable[[], bool]):
        self.stop = stop
        self.count = 0

    def __call__(self) -> bool:
        self.count += 1
        if self.count % POLL_EVERY:
            return False
        return self.stop()
