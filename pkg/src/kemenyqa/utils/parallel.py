"""Parallel processing utilities."""
import os
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .env import env_config

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ParallelProcessor:
    """Runs independent work items on a thread pool and keeps their order."""

    def __init__(self, num_workers: Optional[int] = None):
        """Initialize the processor with the specified number of workers."""
        self.num_workers = num_workers or env_config.get_num_workers() or min(32, (os.cpu_count() or 1) * 2)
        logger.debug("Initialized ParallelProcessor with %d workers", self.num_workers)

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply fn to every item; results come back in submission order.

        The first failing item's exception is re-raised once all work finished.
        """
        items = list(items)
        if self.num_workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]

        results: List[R] = []
        first_error: Optional[BaseException] = None
        with ThreadPoolExecutor(max_workers=self.num_workers) as executor:
            future_to_index = {
                executor.submit(fn, item): index
                for index, item in enumerate(items)
            }

            # Collect in submission order
            for future in future_to_index:
                index = future_to_index[future]
                try:
                    results.append(future.result())
                except Exception as e:
                    logger.error("Error processing work item %d: %s", index, e)
                    if first_error is None:
                        first_error = e

        if first_error is not None:
            raise first_error
        return results
