from __future__ import annotations

import dataclasses
import os

from exocap.config import ConfigFile, parse_config, read_config
from exocap.exceptions import ParseError
from exocap.replay import DEFAULT_CHUNK_LEN
from exocap.se3 import Pose
from exocap.store import METHODS, PHASES
from exocap.stream import DEFAULT_CAPACITY, DEFAULT_TICK_RATE


@dataclasses.dataclass(frozen=True)
class PipelineConfig:
    """Capture pipeline settings.

    Parameters
    ----------
    scenario : str, default=None
        Scenario file driving ``record``. Relative paths are resolved against
        the pipeline file's directory by :func:`read_pipeline_config`.

    hand_model : str, default="inspire6"
        Shipped hand name or hand config path.

    assignment : tuple of int, default=None
        Glove channel driving each hand joint. Defaults to joint ``j`` driven
        by channel ``j % n_channels``.

    calibration : Pose, default=identity
        SLAM-to-robot transform applied to every SLAM reading.

    tick_rate : float, default=30.0

    chunk_len : int, default=30
        Replay chunk length, steps.

    capacity : int, default=1024
        Per-stream buffer size.

    window : int, default=30
        Master ticks aligned per production window.

    task_name, operator_id, phase, method, success
        Episode metadata.
    """

    scenario: str | None = None
    hand_model: str = "inspire6"
    assignment: tuple[int, ...] | None = None
    calibration: Pose = dataclasses.field(default_factory=Pose.identity)
    tick_rate: float = DEFAULT_TICK_RATE
    chunk_len: int = DEFAULT_CHUNK_LEN
    capacity: int = DEFAULT_CAPACITY
    window: int = 30
    task_name: str = "sim"
    operator_id: str = "sim"
    phase: str = "collection"
    method: str = "exoskeleton"
    success: bool = True

    def __post_init__(self):
        if self.assignment is not None:
            object.__setattr__(self, "assignment", tuple(self.assignment))
        if not self.tick_rate > 0:
            raise ValueError(f"tick_rate must be > 0, got {self.tick_rate}.")
        if self.chunk_len < 1 or self.window < 1 or self.capacity < 1:
            raise ValueError("chunk_len, window and capacity must be >= 1.")
        if self.phase not in PHASES:
            raise ValueError(
                f"phase must be one of {PHASES}, got {self.phase!r}."
            )
        if self.method not in METHODS:
            raise ValueError(
                f"method must be one of {METHODS}, got {self.method!r}."
            )

    def resolve_assignment(self, n_joints: int, n_channels: int) -> list[int]:
        if self.assignment is not None:
            return list(self.assignment)
        return [j % n_channels for j in range(n_joints)]

    @classmethod
    def from_config(
        cls, config: ConfigFile, base_dir: str | None = None
    ) -> PipelineConfig:
        kwargs = {}
        scenario = config.get_str("scenario", "")
        if scenario:
            if base_dir is not None and not os.path.isabs(scenario):
                scenario = os.path.join(base_dir, scenario)
            kwargs["scenario"] = scenario

        str_keys = ("hand_model", "task_name", "operator_id", "phase", "method")
        for key in str_keys:
            if key in config:
                kwargs[key] = config.get_str(key)
        for key in ("chunk_len", "capacity", "window"):
            if key in config:
                kwargs[key] = config.get_int(key)
        if "tick_rate" in config:
            kwargs["tick_rate"] = config.get_float("tick_rate")
        if "success" in config:
            kwargs["success"] = config.get_bool("success")

        entry = config.get("assignment")
        if entry is not None:
            try:
                kwargs["assignment"] = tuple(int(tok) for tok in entry.tokens)
            except ValueError:
                raise ParseError(
                    line=entry.line, reason="assignment must be integers"
                ) from None

        entry = config.get("calibration")
        if entry is not None:
            values = config.get_floats("calibration")
            if len(values) != 7:
                raise ParseError(
                    line=entry.line,
                    reason="expected 'calibration: tx ty tz qw qx qy qz'",
                )
            try:
                kwargs["calibration"] = Pose.from_array(values)
            except ValueError as exc:
                raise ParseError(line=entry.line, reason=str(exc)) from None

        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise ParseError(line=0, reason=str(exc)) from None


def load_pipeline_config(text: str) -> PipelineConfig:
    return PipelineConfig.from_config(parse_config(text))


def read_pipeline_config(path: str | os.PathLike) -> PipelineConfig:
    """Reads a pipeline file::

        scenario: scenario.txt
        hand_model: inspire6
        assignment: 0 1 2 3 4 5
        calibration: 0.0 0.0 0.1 1.0 0.0 0.0 0.0
        tick_rate: 30
        task_name: pick-place
    """
    base_dir = os.path.dirname(os.path.abspath(path))
    return PipelineConfig.from_config(read_config(path), base_dir=base_dir)
