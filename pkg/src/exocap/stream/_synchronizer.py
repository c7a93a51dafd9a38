from __future__ import annotations

import dataclasses
import logging
import threading

import numpy as np

from exocap.exceptions import (
    DuplicateId,
    KindMismatch,
    NonMonotonicTimestamp,
    SessionAlreadyStarted,
    SessionNotStarted,
    UnknownStream,
)
from exocap.se3 import Pose, interpolate

from ._buffer import DEFAULT_CAPACITY, BufferStats, SampleBuffer
from ._types import (
    GAP,
    FramePayload,
    Sample,
    StreamDescriptor,
    StreamKind,
    SyncedFrame,
    tick_time_ns,
)

logger = logging.getLogger(__name__)

DEFAULT_TICK_RATE = 30.0


@dataclasses.dataclass(frozen=True)
class StreamHandle:
    """Opaque handle returned by :meth:`StreamSynchronizer.register_stream`."""

    stream_id: str
    index: int


def _payload_kind_name(payload) -> str:
    if isinstance(payload, Pose):
        return "pose"
    if isinstance(payload, FramePayload):
        return "frame"
    if isinstance(payload, np.ndarray):
        return "joints"
    return type(payload).__name__


def _interpolate_joints(
    before: np.ndarray, after: np.ndarray, u: float
) -> np.ndarray:
    value = before + u * (after - before)
    # Keep the result inside the bracketing samples despite rounding.
    value = np.clip(value, np.minimum(before, after), np.maximum(before, after))
    value.setflags(write=False)
    return value


class StreamSynchronizer:
    """Multi-rate sensor multiplexer.

    Producers push timestamped samples, one producer per stream; a single
    consumer aligns every registered stream at master ticks. Poses are
    interpolated along the geodesic, joint vectors element-wise and frames
    are held (latest earlier frame). A stream with no sample within its
    staleness budget yields :data:`GAP`.

    Parameters
    ----------
    tick_rate : float, default=30.0
        Master tick rate, Hz.

    capacity : int, default=1024
        Per-stream buffer size.
    """

    def __init__(
        self,
        tick_rate: float = DEFAULT_TICK_RATE,
        capacity: int = DEFAULT_CAPACITY,
    ):
        if not tick_rate > 0:
            raise ValueError(f"tick_rate must be > 0, got {tick_rate}.")
        self.tick_rate = tick_rate
        self.capacity = capacity
        self._descriptors: dict[str, StreamDescriptor] = {}
        self._buffers: dict[str, SampleBuffer] = {}
        self._started = False
        self._next_tick = 0
        self._lock = threading.Lock()

    @property
    def started(self) -> bool:
        return self._started

    @property
    def roster(self) -> list[StreamDescriptor]:
        return list(self._descriptors.values())

    def register_stream(self, desc: StreamDescriptor) -> StreamHandle:
        """Adds a stream to the session roster.

        Raises
        ------
        DuplicateId if the stream id is already registered.
        SessionAlreadyStarted if :meth:`start` was called.
        """
        with self._lock:
            if self._started:
                raise SessionAlreadyStarted(action="register stream")
            if desc.stream_id in self._descriptors:
                raise DuplicateId(stream_id=desc.stream_id)
            self._descriptors[desc.stream_id] = desc
            self._buffers[desc.stream_id] = SampleBuffer(self.capacity)
            handle = StreamHandle(desc.stream_id, len(self._descriptors) - 1)
        logger.debug("Registered stream %s.", desc)
        return handle

    def start(self) -> None:
        with self._lock:
            if self._started:
                raise SessionAlreadyStarted(action="start")
            self._started = True

    def stop(self) -> None:
        with self._lock:
            self._started = False

    def _check_started(self, action: str) -> None:
        if not self._started:
            raise SessionNotStarted(action=action)

    def _resolve(self, handle: StreamHandle | str) -> StreamDescriptor:
        stream_id = handle if isinstance(handle, str) else handle.stream_id
        try:
            return self._descriptors[stream_id]
        except KeyError:
            raise UnknownStream(stream_id=stream_id) from None

    def _check_payload(self, desc: StreamDescriptor, payload) -> None:
        got = _payload_kind_name(payload)
        if got != desc.kind.name.lower():
            raise KindMismatch(
                stream_id=desc.stream_id,
                expected=desc.kind.name.lower(),
                got=got,
            )
        if desc.kind == StreamKind.JOINTS and payload.shape != (desc.width,):
            raise KindMismatch(
                stream_id=desc.stream_id,
                expected=f"joints of shape ({desc.width},)",
                got=f"joints of shape {payload.shape}",
            )

    def push(self, handle: StreamHandle | str, sample: Sample) -> bool:
        """Buffers a sample.

        Returns
        -------
        accepted : bool
            False when the stream buffer is full (counted in :meth:`stats`).

        Raises
        ------
        SessionNotStarted, UnknownStream, KindMismatch, NonMonotonicTimestamp
        """
        self._check_started("push")
        desc = self._resolve(handle)
        if sample.stream_id != desc.stream_id:
            raise UnknownStream(stream_id=sample.stream_id)
        self._check_payload(desc, sample.payload)
        if desc.kind == StreamKind.JOINTS:
            payload = np.array(sample.payload, dtype=np.float64)
            payload.setflags(write=False)
            sample = Sample(sample.stream_id, int(sample.timestamp), payload)
        buffer = self._buffers[desc.stream_id]
        try:
            return buffer.append(sample)
        except ValueError:
            raise NonMonotonicTimestamp(
                stream_id=desc.stream_id,
                timestamp=sample.timestamp,
                last=buffer.last_timestamp,
            ) from None

    def _align_stream(self, desc: StreamDescriptor, tick_time: int):
        before, after = self._buffers[desc.stream_id].bracket(tick_time)
        budget = desc.staleness_budget

        if before is not None and before.timestamp == tick_time:
            return before.payload
        if before is None or tick_time - before.timestamp > budget:
            return GAP
        if desc.kind == StreamKind.FRAME:
            return before.payload
        if after is None:
            # Nothing newer yet: hold the latest sample.
            return before.payload
        if after.timestamp - tick_time > budget:
            return before.payload

        span = after.timestamp - before.timestamp
        u = (tick_time - before.timestamp) / span
        if desc.kind == StreamKind.POSE:
            return interpolate(before.payload, after.payload, u)
        return _interpolate_joints(before.payload, after.payload, u)

    def align_at(
        self, tick_time: int, tick_index: int | None = None
    ) -> SyncedFrame:
        """Aligns every registered stream at ``tick_time``.

        Parameters
        ----------
        tick_time : int
            Nanoseconds.

        tick_index : int, default=None
            Defaults to a counter of previous calls.

        Returns
        -------
        SyncedFrame
        """
        self._check_started("align")
        if tick_index is None:
            tick_index = self._next_tick
        self._next_tick = tick_index + 1
        entries = {
            stream_id: self._align_stream(desc, tick_time)
            for stream_id, desc in self._descriptors.items()
        }
        return SyncedFrame(tick_index, tick_time, entries)

    def align_tick(self, tick_index: int) -> SyncedFrame:
        """Aligns at master tick ``tick_index`` of :attr:`tick_rate`."""
        tick_time = tick_time_ns(tick_index, self.tick_rate)
        return self.align_at(tick_time, tick_index)

    def discard_before(self, timestamp: int) -> None:
        """Releases samples that cannot affect ticks ``>= timestamp``."""
        for buffer in self._buffers.values():
            buffer.discard_before(timestamp)

    def stats(self) -> dict[str, BufferStats]:
        return {
            stream_id: dataclasses.replace(buffer.stats)
            for stream_id, buffer in self._buffers.items()
        }
