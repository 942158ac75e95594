"""
Process-pool helpers shared by the exhaustive solvers.

Work is split into index ranges; each worker returns the lowest hit in its
range (or None) and the caller keeps the lowest overall, so the answer does
not depend on the number of workers or their completion order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import psutil

from ..config import settings

logger = logging.getLogger(__name__)


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous, ordered ranges"""
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        if end > start:
            ranges.append((start, end))
        start = end
    return ranges


def resolve_jobs(jobs: Optional[int]) -> int:
    """Worker count to use; falls back to 1 when RAM is below the configured floor"""
    if jobs is None:
        jobs = settings.DEFAULT_JOBS
    if jobs <= 1:
        return 1

    # Safety check: each worker holds its own chunk buffers
    available_gb = psutil.virtual_memory().available / (1024 ** 3)
    if available_gb < settings.MIN_PARALLEL_RAM_GB:
        logger.warning(
            f"Only {available_gb:.1f}GB RAM available (< {settings.MIN_PARALLEL_RAM_GB}GB), "
            f"falling back to sequential processing"
        )
        return 1
    return jobs


def first_hit(worker: Callable, payload: Sequence, total: int, jobs: Optional[int]) -> Optional[int]:
    """
    Lowest index in [0, total) accepted by `worker`.

    `worker(payload, start, end)` must return the lowest accepted index in
    [start, end) or None. Ranges run in parallel when more than one job is
    allowed; the first range (in index order) with a hit decides.
    """
    workers = resolve_jobs(jobs)
    if workers == 1 or total < 2:
        return worker(payload, 0, total)

    ranges = split_range(total, workers * 4)
    logger.info(f"Searching {total} candidates in {len(ranges)} ranges with {workers} workers")
    best = None
    try:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(worker, payload, start, end) for start, end in ranges]
            for future in futures:
                best = future.result()
                if best is not None:
                    # Ranges are ordered: later ranges cannot beat this hit
                    for pending in futures:
                        pending.cancel()
                    break
    except (OSError, RuntimeError) as e:
        logger.warning(f"Parallel search failed ({e}), falling back to sequential processing")
        return worker(payload, 0, total)
    return best
