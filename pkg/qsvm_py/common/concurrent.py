from typing import Callable, List, Sequence, TypeVar
from threading import Semaphore
from concurrent.futures import ThreadPoolExecutor, as_completed

T = TypeVar("T")
R = TypeVar("R")


def sure_release(semaphore: Semaphore, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    finally:
        semaphore.release()


def ordered_map(func: Callable[[T], R], items: Sequence[T], max_workers: int = 1) -> List[R]:
    """Apply `func` to every item, concurrently when `max_workers` > 1

    Results are placed by index, so the output order never depends on scheduling.
    The first raised exception is re-raised after all submitted tasks finish.
    """

    if max_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    results: List = [None] * len(items)
    semaphore = Semaphore(max_workers)
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futs = {}
        for i, item in enumerate(items):
            semaphore.acquire()
            fut = executor.submit(sure_release, semaphore, func, item)
            futs[fut] = i

        error = None
        for fut in as_completed(futs):
            i = futs[fut]
            e = fut.exception()
            if e is None:
                results[i] = fut.result()
            elif error is None:
                error = e

    if error is not None:
        raise error
    return results
