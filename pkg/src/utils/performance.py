"""
Performance utilities: timing and thread-pool fan-out for independent solver runs.
"""
import os
import time
import functools
import logging
from typing import Callable, Iterable, List, Optional, TypeVar
from concurrent.futures import ThreadPoolExecutor

import config

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def measure_time(func: Callable) -> Callable:
    """
    Decorator that logs the execution time of a function.

    Args:
        func: The function to measure.

    Returns:
        The decorated function.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        duration = (time.perf_counter() - start_time) * 1000
        logger.debug(f"Performance: {func.__name__} took {duration:.2f} ms")
        return result

    return wrapper


class Timer:
    """
    Context manager measuring wall time of a block.

    Usage:
        with Timer("factorize") as timer:
            ...
        timer.elapsed_ms
    """

    def __init__(self, name: str = "block"):
        self.name = name
        self.start: Optional[float] = None
        self.elapsed_ms: float = 0.0

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        self.elapsed_ms = (time.perf_counter() - self.start) * 1000
        logger.debug(f"Performance: {self.name} took {self.elapsed_ms:.2f} ms")
        return False


def resolve_threads(threads: Optional[int] = None) -> int:
    """
    Number of worker threads to use.

    Args:
        threads: Explicit request; falls back to the TROPREG_THREADS environment
            variable, then to the available CPU count.

    Returns:
        A positive thread count.
    """
    if threads is None:
        env_value = os.environ.get(config.THREADS_ENV_VAR, "").strip()
        if env_value:
            try:
                threads = int(env_value)
            except ValueError:
                logger.warning(f"Ignoring {config.THREADS_ENV_VAR}={env_value!r}")
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, int(threads))


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply func to every item, possibly on a thread pool.

    Results come back in input order whatever the schedule, so reductions over
    them are deterministic. With one thread (or one item) everything runs inline.

    Args:
        func: Function of one argument.
        items: Inputs.
        threads: Worker count, see resolve_threads.

    Returns:
        List of results in input order.
    """
    items = list(items)
    workers = min(resolve_threads(threads), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
