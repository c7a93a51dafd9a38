from __future__ import annotations

import dataclasses
import logging
import os
import re

import numpy as np
from sklearn.utils import check_random_state

from exocap.store import EpisodeMeta, begin_episode
from exocap.stream import (
    StreamDescriptor,
    StreamKind,
    SyncedFrame,
    tick_time_ns,
)

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SyntheticTask:
    """Target statistics of one synthetic task.

    The generated durations have exactly this sample mean and standard
    deviation before tick quantization.
    """

    task_name: str
    mean_duration: float
    std_duration: float
    successes: int
    trials: int = 30
    phase: str = "collection"
    method: str = "exoskeleton"

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials].")
        if not (self.mean_duration > 0 and self.std_duration >= 0):
            raise ValueError("mean must be > 0 and std >= 0.")


# Reported data-collection statistics of the exoskeleton system.
REFERENCE_TASKS = (
    SyntheticTask("pick-place", 4.8, 0.9, 29),
    SyntheticTask("sort six bottles", 41.8, 7.8, 27),
    SyntheticTask("hammer", 12.4, 3.3, 28),
    SyntheticTask("wipe whiteboard", 12.9, 2.1, 27),
)

# Success counts of the trained policy on the same tasks.
DEPLOYMENT_TASKS = tuple(
    dataclasses.replace(task, successes=successes, phase="deployment")
    for task, successes in zip(REFERENCE_TASKS, (26, 23, 25, 24))
)

_SYNTH_STREAM = StreamDescriptor("hand", StreamKind.JOINTS, 30.0, width=1)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", text).strip("-")


def _durations(task: SyntheticTask, random_state, min_duration: float):
    if task.trials == 1:
        return np.array([task.mean_duration])
    while True:
        z = random_state.standard_normal(task.trials)
        z = (z - z.mean()) / z.std(ddof=1)
        durations = task.mean_duration + task.std_duration * z
        if np.all(durations >= min_duration):
            return durations


def make_synthetic_dataset(
    root: str | os.PathLike,
    tasks=REFERENCE_TASKS,
    random_state=None,
    tick_rate: float = 30.0,
) -> list[str]:
    """Writes one minimal episode per trial of every task.

    Each episode carries a single one-joint stream; only its length, success
    flag and metadata matter. Success flags are shuffled over the trials.

    Parameters
    ----------
    root : str or PathLike
        Dataset directory.

    tasks : iterable of SyntheticTask, default=REFERENCE_TASKS

    random_state : int, RandomState instance or None, default=None

    tick_rate : float, default=30.0
        Episode lengths are rounded to whole ticks of this rate.

    Returns
    -------
    paths : list of str
    """
    random_state = check_random_state(random_state)
    descriptor = dataclasses.replace(_SYNTH_STREAM, nominal_rate=tick_rate)
    command = np.zeros(1)
    command.setflags(write=False)

    paths = []
    for task in tasks:
        durations = _durations(task, random_state, 1.0 / tick_rate)
        success = np.zeros(task.trials, dtype=bool)
        success[: task.successes] = True
        success = random_state.permutation(success)

        prefix = f"{_slug(task.task_name)}_{task.phase}_{task.method}"
        for trial, (duration, ok) in enumerate(zip(durations, success)):
            meta = EpisodeMeta(
                task_name=task.task_name,
                operator_id="synthetic",
                tick_rate=tick_rate,
                roster=(descriptor,),
                success=bool(ok),
                phase=task.phase,
                method=task.method,
            )
            n_records = int(round(duration * tick_rate)) + 1
            with begin_episode(meta, root, f"{prefix}_{trial:03d}") as writer:
                for i in range(n_records):
                    writer.append(
                        SyncedFrame(
                            i, tick_time_ns(i, tick_rate), {"hand": command}
                        )
                    )
            paths.append(writer.path)
        logger.info(
            "Wrote %d synthetic '%s' episodes (%s, %s).",
            task.trials,
            task.task_name,
            task.phase,
            task.method,
        )
    return paths
