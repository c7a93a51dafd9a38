from __future__ import annotations

import dataclasses
import os

import numpy as np

from exocap.config import ConfigFile, format_config, parse_config, read_config
from exocap.exceptions import InvalidScenario, ParseError

CAMERAS = ("cam_left", "cam_right", "cam_wrist")

_MAX_SEED = 2**64


@dataclasses.dataclass(frozen=True)
class GloveChannel:
    """One glove channel, ``amplitude * sin(2 pi frequency t + phase)``."""

    amplitude: float
    frequency: float
    phase: float = 0.0

    def value(self, t):
        angle = 2 * np.pi * self.frequency * t + self.phase
        return self.amplitude * np.sin(angle)


@dataclasses.dataclass(frozen=True)
class FrameStall:
    """Window ``[start, end)`` (seconds) in which a camera delivers nothing."""

    camera: str
    start: float
    end: float

    def covers(self, t: float) -> bool:
        return self.start <= t < self.end


@dataclasses.dataclass(frozen=True)
class SimScenario:
    """Simulated capture session.

    The SLAM camera travels a horizontal circle of ``slam_radius`` around
    ``slam_center`` at ``slam_angular_rate``, yawing with the tangent; its
    readings carry Gaussian noise of ``noise_translation`` meters per axis and
    a rotation vector of ``noise_rotation`` radians per axis. Every glove
    channel is a sinusoid and every camera delivers small GRAY8 frames
    stamped with their frame index.

    Parameters
    ----------
    duration : float
        Seconds, > 0.

    seed : int
        64-bit seed; identical seeds reproduce identical sample streams.

    slam_radius, slam_angular_rate : float

    slam_center : tuple of float

    noise_translation, noise_rotation : float
        Noise standard deviations, >= 0.

    glove : tuple of GloveChannel
        At least one channel, each with a positive amplitude.

    slam_rate, glove_rate, frame_rate : float
        Source rates, Hz.

    frame_size : tuple of int
        ``(width, height)`` in pixels.

    cameras : tuple of str

    stalls : tuple of FrameStall
    """

    duration: float
    seed: int = 0
    slam_radius: float = 0.2
    slam_angular_rate: float = 1.0
    slam_center: tuple[float, float, float] = (0.3, 0.0, 0.5)
    noise_translation: float = 0.0
    noise_rotation: float = 0.0
    glove: tuple[GloveChannel, ...] = (
        GloveChannel(1.0, 0.5, 0.0),
        GloveChannel(1.0, 0.5, 0.5),
        GloveChannel(1.0, 0.5, 1.0),
        GloveChannel(1.0, 0.5, 1.5),
        GloveChannel(1.0, 0.3, 0.0),
        GloveChannel(1.0, 0.3, 1.0),
    )
    slam_rate: float = 200.0
    glove_rate: float = 120.0
    frame_rate: float = 30.0
    frame_size: tuple[int, int] = (8, 6)
    cameras: tuple[str, ...] = CAMERAS
    stalls: tuple[FrameStall, ...] = ()

    def __post_init__(self):
        for name in ("slam_center", "glove", "frame_size", "cameras", "stalls"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

        if not (np.isfinite(self.duration) and self.duration > 0):
            raise InvalidScenario(
                reason=f"duration must be > 0, got {self.duration}"
            )
        if not 0 <= self.seed < _MAX_SEED:
            raise InvalidScenario(
                reason=f"seed must be a 64-bit value, got {self.seed}"
            )
        if not (self.noise_translation >= 0 and self.noise_rotation >= 0):
            raise InvalidScenario(
                reason="noise standard deviations must be >= 0"
            )
        if not self.slam_radius >= 0:
            raise InvalidScenario(reason="slam_radius must be >= 0")
        if len(self.slam_center) != 3:
            raise InvalidScenario(reason="slam_center must have 3 coordinates")
        for name in ("slam_rate", "glove_rate", "frame_rate"):
            if not getattr(self, name) > 0:
                raise InvalidScenario(reason=f"{name} must be > 0")
        if not self.glove:
            raise InvalidScenario(reason="scenario has no glove channels")
        if any(not ch.amplitude > 0 for ch in self.glove):
            raise InvalidScenario(reason="glove amplitudes must be > 0")
        if len(self.frame_size) != 2 or min(self.frame_size) < 1:
            raise InvalidScenario(
                reason="frame_size must be two positive ints"
            )
        if len(set(self.cameras)) != len(self.cameras):
            raise InvalidScenario(reason="camera ids must be unique")
        for stall in self.stalls:
            if stall.camera not in self.cameras:
                raise InvalidScenario(
                    reason=f"stall names unknown camera '{stall.camera}'"
                )
            if not stall.start < stall.end:
                raise InvalidScenario(
                    reason="stall start must be before its end"
                )

    @property
    def n_channels(self) -> int:
        return len(self.glove)

    def slam_path(self, t):
        """Noise-free SLAM reading at time ``t`` (seconds).

        Returns
        -------
        translation : np.ndarray, shape=(3,)

        rotation : np.ndarray, shape=(4,)
            Scalar-first unit quaternion, a pure yaw by
            ``slam_angular_rate * t``.
        """
        angle = self.slam_angular_rate * t
        center = np.asarray(self.slam_center, dtype=np.float64)
        offset = np.array([np.cos(angle), np.sin(angle), 0.0])
        translation = center + self.slam_radius * offset
        rotation = np.array([np.cos(angle / 2), 0.0, 0.0, np.sin(angle / 2)])
        return translation, rotation

    def glove_at(self, t: float) -> np.ndarray:
        return np.array([ch.value(t) for ch in self.glove])

    def glove_open(self) -> np.ndarray:
        """Calibration frame with every channel at its minimum."""
        return np.array([-ch.amplitude for ch in self.glove])

    def glove_closed(self) -> np.ndarray:
        """Calibration frame with every channel at its maximum."""
        return np.array([ch.amplitude for ch in self.glove])

    def stalled(self, camera: str, t: float) -> bool:
        return any(s.camera == camera and s.covers(t) for s in self.stalls)

    @classmethod
    def from_config(cls, config: ConfigFile) -> SimScenario:
        kwargs = {"duration": config.get_float("duration")}
        if "seed" in config:
            kwargs["seed"] = config.get_int("seed")
        for key in (
            "slam_radius",
            "slam_angular_rate",
            "noise_translation",
            "noise_rotation",
            "slam_rate",
            "glove_rate",
            "frame_rate",
        ):
            if key in config:
                kwargs[key] = config.get_float(key)
        if "slam_center" in config:
            center = config.get_floats("slam_center")
            kwargs["slam_center"] = tuple(center)

        glove = []
        for entry in config.get_all("glove"):
            tokens = entry.tokens
            if len(tokens) not in (2, 3):
                raise ParseError(
                    line=entry.line,
                    reason="expected 'glove: <amplitude> <frequency>"
                    " [<phase>]'",
                )
            try:
                glove.append(GloveChannel(*map(float, tokens)))
            except ValueError:
                raise ParseError(
                    line=entry.line, reason="glove values must be numbers"
                ) from None
        if glove:
            kwargs["glove"] = tuple(glove)

        if "frame_size" in config:
            entry = config.get("frame_size")
            try:
                kwargs["frame_size"] = tuple(int(tok) for tok in entry.tokens)
            except ValueError:
                raise ParseError(
                    line=entry.line, reason="frame_size must be integers"
                ) from None
        if "cameras" in config:
            kwargs["cameras"] = tuple(config.get("cameras").tokens)

        stalls = []
        for entry in config.get_all("stall"):
            tokens = entry.tokens
            if len(tokens) != 3:
                raise ParseError(
                    line=entry.line,
                    reason="expected 'stall: <camera> <start_s> <end_s>'",
                )
            try:
                start, end = float(tokens[1]), float(tokens[2])
                stall = FrameStall(tokens[0], start, end)
                stalls.append(stall)
            except ValueError:
                raise ParseError(
                    line=entry.line, reason="stall bounds must be numbers"
                ) from None
        kwargs["stalls"] = tuple(stalls)
        return cls(**kwargs)

    def to_text(self) -> str:
        items = [
            ("duration", repr(float(self.duration))),
            ("seed", self.seed),
            ("slam_radius", repr(float(self.slam_radius))),
            ("slam_angular_rate", repr(float(self.slam_angular_rate))),
            ("slam_center", " ".join(repr(float(v)) for v in self.slam_center)),
            ("noise_translation", repr(float(self.noise_translation))),
            ("noise_rotation", repr(float(self.noise_rotation))),
            ("slam_rate", repr(float(self.slam_rate))),
            ("glove_rate", repr(float(self.glove_rate))),
            ("frame_rate", repr(float(self.frame_rate))),
            ("frame_size", f"{self.frame_size[0]} {self.frame_size[1]}"),
            ("cameras", " ".join(self.cameras)),
        ]
        items += [
            ("glove", f"{ch.amplitude!r} {ch.frequency!r} {ch.phase!r}")
            for ch in self.glove
        ]
        items += [
            ("stall", f"{s.camera} {s.start!r} {s.end!r}") for s in self.stalls
        ]
        return format_config(items)


def load_scenario(text: str) -> SimScenario:
    """Parses scenario text::

        duration: 3.0
        seed: 7
        noise_translation: 0.001
        glove: 1.0 0.5 0.0
        stall: cam_wrist 1.0 1.5

    Omitted keys keep the :class:`SimScenario` defaults; ``glove`` lines, when
    present, replace the default channels.

    Raises
    ------
    ParseError, InvalidScenario
    """
    return SimScenario.from_config(parse_config(text))


def read_scenario(path: str | os.PathLike) -> SimScenario:
    return SimScenario.from_config(read_config(path))
