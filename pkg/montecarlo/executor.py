"""
Replication Executor
Runs independent replications on worker threads with bounded concurrency
"""

import asyncio
from typing import Callable, List, Sequence, TypeVar

from monitoring import get_logger

logger = get_logger(__name__)

T = TypeVar('T')
R = TypeVar('R')


class ReplicationExecutor:
    """
    Semaphore-bounded thread executor

    Results come back in submission order, so aggregation over them does not
    depend on the number of workers.
    """

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.workers = workers

    async def map(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        Apply fn to every item

        Args:
            fn: Blocking function of one item
            items: Work items

        Returns:
            fn(item) for each item, in item order
        """
        if self.workers == 1:
            return [fn(item) for item in items]

        semaphore = asyncio.Semaphore(self.workers)

        async def bounded(item: T) -> R:
            async with semaphore:
                return await asyncio.to_thread(fn, item)

        return await asyncio.gather(*[bounded(item) for item in items])

    def run(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """Blocking wrapper around map"""
        logger.debug("Dispatching replications", items=len(items), workers=self.workers)
        return asyncio.run(self.map(fn, items))
