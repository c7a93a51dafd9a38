from __future__ import annotations

import dataclasses
import os

import numpy as np

from exocap.config import ConfigFile, read_config
from exocap.exceptions import InvalidChunk, InvalidEnvelope
from exocap.retarget import HandModel
from exocap.se3 import Pose


@dataclasses.dataclass(frozen=True, eq=False)
class ActionStep:
    """End-effector pose and hand command for one tick."""

    pose: Pose
    hand: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class ActionChunk:
    """Fixed-rate sequence of actions emitted as one unit.

    Parameters
    ----------
    dt : float
        Seconds per step.

    steps : tuple of ActionStep
        Non-empty; every hand command has the same length.

    model : HandModel, default=None
        When given, every hand command must lie within its joint limits.
    """

    dt: float
    steps: tuple[ActionStep, ...]
    model: HandModel | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise InvalidChunk(reason=f"dt must be > 0, got {self.dt}")
        if not self.steps:
            raise InvalidChunk(reason="chunk has no steps")
        width = self.steps[0].hand.shape
        for i, step in enumerate(self.steps):
            if step.hand.shape != width:
                raise InvalidChunk(
                    reason=f"step {i} hand command has shape {step.hand.shape},"
                    f" expected {width}"
                )
            if self.model is not None and not self.model.contains(step.hand):
                raise InvalidChunk(
                    reason=f"step {i} hand command is not valid for hand"
                    f" '{self.model.name}'"
                )

    def __len__(self):
        return len(self.steps)

    @property
    def duration(self) -> float:
        return (len(self.steps) - 1) * self.dt


@dataclasses.dataclass(frozen=True, eq=False)
class SafetyEnvelope:
    """Limits enforced on every emitted sample.

    Parameters
    ----------
    workspace_min, workspace_max : array_like, shape=(3,)
        Axis-aligned workspace box, meters.

    max_speed : float
        Translational speed limit, m/s.

    max_joint_delta : float
        Per-joint change limit per chunk step, radians.
    """

    workspace_min: np.ndarray
    workspace_max: np.ndarray
    max_speed: float
    max_joint_delta: float

    def __post_init__(self):
        lo = np.array(self.workspace_min, dtype=np.float64)
        hi = np.array(self.workspace_max, dtype=np.float64)
        if lo.shape != (3,) or hi.shape != (3,):
            raise InvalidEnvelope(reason="workspace bounds must be 3-vectors")
        if not np.all(lo < hi):
            raise InvalidEnvelope(reason="workspace min must be < max per axis")
        if not self.max_speed > 0:
            raise InvalidEnvelope(
                reason=f"max_speed must be > 0, got {self.max_speed}"
            )
        if not self.max_joint_delta > 0:
            raise InvalidEnvelope(
                reason=(
                    f"max_joint_delta must be > 0, got {self.max_joint_delta}"
                )
            )
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "workspace_min", lo)
        object.__setattr__(self, "workspace_max", hi)

    def contains(self, translation: np.ndarray) -> bool:
        return bool(
            np.all(translation >= self.workspace_min)
            and np.all(translation <= self.workspace_max)
        )

    @classmethod
    def from_config(cls, config: ConfigFile) -> SafetyEnvelope:
        return cls(
            workspace_min=config.get_floats("workspace_min"),
            workspace_max=config.get_floats("workspace_max"),
            max_speed=config.get_float("max_speed"),
            max_joint_delta=config.get_float("max_joint_delta"),
        )


def read_envelope(path: str | os.PathLike) -> SafetyEnvelope:
    """Reads a safety envelope file::

        workspace_min: -1.0 -1.0 0.0
        workspace_max: 1.0 1.0 1.5
        max_speed: 1.0
        max_joint_delta: 0.2
    """
    return SafetyEnvelope.from_config(read_config(path))
