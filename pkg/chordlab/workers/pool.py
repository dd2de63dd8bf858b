"""
Process-pool map with results returned in task order.

Callers split their work into units whose boundaries do not depend on the
number of workers, then merge the ordered results. That keeps every merged
table, histogram and estimate identical for any worker count.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from chordlab.config import resolve_threads
from chordlab.utils.logging_utils import logger

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], tasks: Iterable[T], threads: int | None = None) -> List[R]:
    """
    Apply `fn` to every task and return the results in task order.

    Args:
        fn: Module-level (picklable) function of one argument
        tasks: Work units
        threads: Worker processes; None reads CHORDLAB_THREADS, 1 runs in-process
    """
    tasks = list(tasks)
    workers = min(resolve_threads(threads), max(len(tasks), 1))

    if workers <= 1:
        return [fn(task) for task in tasks]

    logger.debug(f"[Pool] {len(tasks)} tasks on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, tasks))
