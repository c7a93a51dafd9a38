"""
The :mod:`exocap.stream` module multiplexes multi-rate sensor streams into
time-aligned frames.
"""

from ._buffer import DEFAULT_CAPACITY, BufferStats, SampleBuffer
from ._producer import Producer, drive_producer
from ._synchronizer import DEFAULT_TICK_RATE, StreamHandle, StreamSynchronizer
from ._types import (
    GAP,
    NS_PER_S,
    EpisodeRecord,
    FrameEncoding,
    FramePayload,
    Gap,
    Sample,
    StreamDescriptor,
    StreamKind,
    SyncedFrame,
    is_gap,
    tick_time_ns,
)

__all__ = [
    "BufferStats",
    "DEFAULT_CAPACITY",
    "DEFAULT_TICK_RATE",
    "EpisodeRecord",
    "FrameEncoding",
    "FramePayload",
    "GAP",
    "Gap",
    "NS_PER_S",
    "Producer",
    "Sample",
    "SampleBuffer",
    "StreamDescriptor",
    "StreamHandle",
    "StreamKind",
    "StreamSynchronizer",
    "SyncedFrame",
    "drive_producer",
    "is_gap",
    "tick_time_ns",
]
