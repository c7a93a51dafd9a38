from __future__ import annotations

import logging
from typing import Protocol, runtime_checkable

import numpy as np

from exocap.se3 import Pose

from ._chunk import ActionStep

logger = logging.getLogger(__name__)


@runtime_checkable
class RobotSink(Protocol):
    """Destination of replayed actions (arm + hand controller seam).

    Called from a single emission loop only.
    """

    def send(self, tick_time: float, pose: Pose, hand: np.ndarray) -> bool:
        """Returns True if the command was accepted."""
        ...


class RecordingSink:
    """Keeps every command it receives, unchanged."""

    def __init__(self):
        self.calls: list[tuple[float, Pose, np.ndarray]] = []

    def send(self, tick_time: float, pose: Pose, hand: np.ndarray) -> bool:
        self.calls.append((tick_time, pose, hand))
        return True

    def __len__(self):
        return len(self.calls)

    @property
    def poses(self) -> list[Pose]:
        return [pose for _, pose, _ in self.calls]

    @property
    def hands(self) -> list[np.ndarray]:
        return [hand for _, _, hand in self.calls]

    @property
    def steps(self) -> list[ActionStep]:
        return [ActionStep(pose, hand) for _, pose, hand in self.calls]


class LoggingSink:
    """Logs every command."""

    def __init__(self, level: int = logging.INFO):
        self.level = level
        self.n_calls = 0

    def send(self, tick_time: float, pose: Pose, hand: np.ndarray) -> bool:
        self.n_calls += 1
        logger.log(
            self.level,
            "t=%.4f pose=%s hand=%s",
            tick_time,
            np.array2string(pose.as_array(), precision=4),
            np.array2string(hand, precision=4),
        )
        return True


def make_sink(name: str) -> RobotSink:
    """Builds a shipped sink by name (``recording`` or ``log``)."""
    if name == "recording":
        return RecordingSink()
    if name in ("log", "logging"):
        return LoggingSink()
    raise ValueError(f"Unknown sink '{name}'; expected 'recording' or 'log'.")
