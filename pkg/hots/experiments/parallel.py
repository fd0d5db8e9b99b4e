"""Ordered thread-pool execution with per-task seeds"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def spawn_seeds(seed: Optional[int], count: int) -> List[np.random.SeedSequence]:
    """Independent child seeds derived from (master seed, task index)"""
    return np.random.SeedSequence(seed).spawn(count)


def run_tasks(
    fn: Callable[[T], R],
    tasks: Sequence[T],
    threads: Optional[int] = None,
    desc: str = "tasks",
    progress: bool = True,
) -> List[R]:
    """Apply fn to every task; results come back in task order"""
    workers = threads or os.cpu_count() or 4
    results: List[Optional[R]] = [None] * len(tasks)
    if workers == 1:
        for index, task in enumerate(tqdm(tasks, desc=desc, disable=not progress)):
            results[index] = fn(task)
        return results

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, task): index for index, task in enumerate(tasks)}
        for future in tqdm(as_completed(futures), total=len(futures), desc=desc, disable=not progress):
            results[futures[future]] = future.result()
    return results
