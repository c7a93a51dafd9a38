from __future__ import annotations

import dataclasses

import pandas as pd

from exocap.exceptions import NoSuchTask

from ._index import DatasetIndex


@dataclasses.dataclass(frozen=True)
class TaskStats:
    """Data-collection statistics of one task.

    Attributes
    ----------
    mean_duration, std_duration : float
        Seconds; sample standard deviation (n - 1 denominator).

    successes, trials : int

    success_rate : float
        ``successes / trials``.
    """

    task_name: str
    mean_duration: float
    std_duration: float
    successes: int
    trials: int
    success_rate: float

    def format(self) -> str:
        return (
            f"{self.mean_duration:.1f} ± {self.std_duration:.1f}"
            f"  {self.successes}/{self.trials}"
        )


def _task_frame(
    index: DatasetIndex, task_name: str, phase: str | None
) -> pd.DataFrame:
    frame = index.frame()
    mask = frame["task_name"] == task_name
    if phase is not None:
        mask &= frame["phase"] == phase
    subset = frame[mask]
    if subset.empty:
        raise NoSuchTask(task_name=task_name)
    return subset


def task_stats(
    index: DatasetIndex, task_name: str, phase: str | None = None
) -> TaskStats:
    """Mean/std duration and success counts of a task.

    Parameters
    ----------
    index : DatasetIndex

    task_name : str

    phase : {"collection", "deployment"}, default=None
        Restricts to one phase; None uses every episode of the task.

    Returns
    -------
    TaskStats

    Raises
    ------
    NoSuchTask
    """
    subset = _task_frame(index, task_name, phase)
    durations = subset["duration"].astype(float)
    trials = len(subset)
    successes = int(subset["success"].astype(bool).sum())
    std = float(durations.std(ddof=1)) if trials > 1 else 0.0
    return TaskStats(
        task_name=task_name,
        mean_duration=float(durations.mean()),
        std_duration=std,
        successes=successes,
        trials=trials,
        success_rate=successes / trials,
    )


def stats_table(index: DatasetIndex, phase: str | None = None) -> pd.DataFrame:
    """:func:`task_stats` for every task, one row per task."""
    rows = []
    for task_name in index.task_names():
        try:
            stats = task_stats(index, task_name, phase)
        except NoSuchTask:
            continue
        rows.append(dataclasses.asdict(stats))
    return pd.DataFrame(rows)


def compare_methods(index: DatasetIndex, task_name: str) -> pd.DataFrame:
    """Duration statistics of a task per collection method.

    Returns
    -------
    pd.DataFrame
        Indexed by method with columns ``mean``, ``std``, ``trials``.
    """
    subset = _task_frame(index, task_name, "collection")
    grouped = subset.groupby("method")["duration"]
    table = grouped.agg(["mean", "std", "count"]).rename(
        columns={"count": "trials"}
    )
    return table.fillna({"std": 0.0})
