from typing import Callable, Iterator
from contextlib import contextmanager

from rich.progress import (
    Progress,
    SpinnerColumn,
    TextColumn,
    BarColumn,
    MofNCompleteColumn,
    TimeElapsedColumn,
    TimeRemainingColumn,
)

_progress = Progress(
    SpinnerColumn(),
    TextColumn("[bold blue]{task.fields[title]}", justify="right"),
    BarColumn(bar_width=40),
    "[progress.percentage]{task.percentage:>3.1f}%",
    "•",
    MofNCompleteColumn(),
    "•",
    TimeElapsedColumn(),
    "•",
    TimeRemainingColumn(),
)


def init_progress_bar():
    if not _progress.live._started:
        _progress.start()


def exit_progress_bar():
    if _progress.live._started:
        _progress.stop()


def _no_op(*_):
    pass


@contextmanager
def step_progress(title: str, total: int, enabled: bool = True) -> Iterator[Callable[..., None]]:
    """Yield a callback that advances a `total`-step bar by one per call

    With `enabled` false the callback does nothing and no live display starts.
    """

    if not enabled:
        yield _no_op
        return

    init_progress_bar()
    task_id = _progress.add_task(title, title=title, total=total)

    def advance(*_):
        _progress.update(task_id, advance=1)

    try:
        yield advance
    finally:
        _progress.remove_task(task_id)
        exit_progress_bar()
