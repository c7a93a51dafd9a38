from __future__ import annotations

import dataclasses
import enum
from typing import Union

import numpy as np

from exocap.se3 import Pose

NS_PER_S = 1_000_000_000


class StreamKind(enum.IntEnum):
    """Payload kind of a stream. Values are the on-disk kind codes."""

    POSE = 0
    JOINTS = 1
    FRAME = 2


class FrameEncoding(enum.IntEnum):
    """Frame blob encodings. Decoding is left to consumers."""

    OPAQUE = 0
    GRAY8 = 1


@dataclasses.dataclass(frozen=True, eq=False)
class FramePayload:
    """Opaque camera frame.

    Parameters
    ----------
    data : bytes
        Encoded frame bytes.

    encoding : int
        :class:`FrameEncoding` id.

    width, height : int
        Frame size in pixels.
    """

    data: bytes
    encoding: int = FrameEncoding.GRAY8
    width: int = 0
    height: int = 0

    def __post_init__(self):
        object.__setattr__(self, "data", bytes(self.data))
        if self.encoding == FrameEncoding.GRAY8 and (
            len(self.data) != self.width * self.height
        ):
            raise ValueError(
                f"GRAY8 frame of {self.width}x{self.height} needs"
                f" {self.width * self.height} bytes, got {len(self.data)}."
            )

    def __eq__(self, other):
        if not isinstance(other, FramePayload):
            return NotImplemented
        return (
            self.data == other.data
            and self.encoding == other.encoding
            and self.width == other.width
            and self.height == other.height
        )

    __hash__ = None


Payload = Union[Pose, np.ndarray, FramePayload]


class Gap:
    """Marker for a stream with no usable sample at a tick."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "GAP"

    def __reduce__(self):
        return (Gap, ())


GAP = Gap()


def is_gap(value) -> bool:
    return value is GAP


@dataclasses.dataclass(frozen=True)
class StreamDescriptor:
    """Registered stream.

    Parameters
    ----------
    stream_id : str
        Short identifier, unique within a session.

    kind : StreamKind

    nominal_rate : float
        Expected sample rate, Hz.

    staleness_budget : int, default=None
        Oldest usable sample age, nanoseconds. Defaults to twice the nominal
        period.

    width : int, default=0
        Joint vector length. Required for joints streams.
    """

    stream_id: str
    kind: StreamKind
    nominal_rate: float
    staleness_budget: int | None = None
    width: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", StreamKind(self.kind))
        if not self.stream_id or any(c.isspace() for c in self.stream_id):
            raise ValueError(f"Invalid stream id {self.stream_id!r}.")
        if not self.nominal_rate > 0:
            raise ValueError(
                f"nominal_rate must be > 0, got {self.nominal_rate}."
            )
        if self.staleness_budget is None:
            object.__setattr__(
                self,
                "staleness_budget",
                int(round(2 * NS_PER_S / self.nominal_rate)),
            )
        if not self.staleness_budget > 0:
            raise ValueError(
                f"staleness_budget must be > 0, got {self.staleness_budget}."
            )
        if self.kind == StreamKind.JOINTS and self.width < 1:
            raise ValueError(
                f"Joints stream '{self.stream_id}' needs width >= 1."
            )

    @property
    def period(self) -> int:
        """Nominal sample period, nanoseconds."""
        return int(round(NS_PER_S / self.nominal_rate))


@dataclasses.dataclass(frozen=True, eq=False)
class Sample:
    """Timestamped stream payload.

    ``timestamp`` is in nanoseconds on a monotonic clock.
    """

    stream_id: str
    timestamp: int
    payload: Payload


@dataclasses.dataclass(frozen=True, eq=False)
class SyncedFrame:
    """Time-aligned entries of every registered stream at a master tick.

    ``entries`` maps stream id to its value or :data:`GAP`, in registration
    order.
    """

    tick_index: int
    tick_time: int
    entries: dict

    def gaps(self) -> list[str]:
        return [k for k, v in self.entries.items() if is_gap(v)]

    def has_gaps(self) -> bool:
        return bool(self.gaps())


# Persisted records are synced frames.
EpisodeRecord = SyncedFrame


def tick_time_ns(tick_index: int, tick_rate: float) -> int:
    """Nanosecond timestamp of a master tick."""
    return int(round(tick_index * NS_PER_S / tick_rate))
