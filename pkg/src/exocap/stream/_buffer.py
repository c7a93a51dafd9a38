from __future__ import annotations

import bisect
import dataclasses
import logging
import threading

from ._types import Sample

logger = logging.getLogger(__name__)

DEFAULT_CAPACITY = 1024


@dataclasses.dataclass
class BufferStats:
    accepted: int = 0
    rejected_overflow: int = 0
    rejected_order: int = 0


class SampleBuffer:
    """Bounded, time-ordered sample buffer for a single stream.

    One producer appends while one consumer reads; both go through the same
    lock. When full, the incoming sample is rejected and counted.

    Parameters
    ----------
    capacity : int, default=1024
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}.")
        self.capacity = capacity
        self.stats = BufferStats()
        self._timestamps: list[int] = []
        self._samples: list[Sample] = []
        self._last_timestamp: int | None = None
        self._lock = threading.Lock()

    def __len__(self):
        with self._lock:
            return len(self._samples)

    @property
    def last_timestamp(self) -> int | None:
        return self._last_timestamp

    def append(self, sample: Sample) -> bool:
        """Appends ``sample``.

        Returns
        -------
        accepted : bool
            False when the buffer is full.

        Raises
        ------
        ValueError if the timestamp does not increase strictly.
        """
        with self._lock:
            last = self._last_timestamp
            if last is not None and sample.timestamp <= last:
                self.stats.rejected_order += 1
                raise ValueError(sample.timestamp, last)
            if len(self._samples) >= self.capacity:
                self.stats.rejected_overflow += 1
                if self.stats.rejected_overflow == 1:
                    logger.warning(
                        "Buffer for stream '%s' is full (%d samples); "
                        "rejecting newest samples.",
                        sample.stream_id,
                        self.capacity,
                    )
                return False
            self._timestamps.append(sample.timestamp)
            self._samples.append(sample)
            self._last_timestamp = sample.timestamp
            self.stats.accepted += 1
            return True

    def bracket(self, timestamp: int) -> tuple[Sample | None, Sample | None]:
        """Returns the latest sample ``<= timestamp`` and the earliest
        sample ``> timestamp`` (either may be None)."""
        with self._lock:
            i = bisect.bisect_right(self._timestamps, timestamp)
            before = self._samples[i - 1] if i > 0 else None
            after = self._samples[i] if i < len(self._samples) else None
        return before, after

    def discard_before(self, timestamp: int) -> int:
        """Drops samples no longer needed to align ticks ``>= timestamp``.

        The latest sample ``<= timestamp`` is kept since it may still bracket
        or be held at ``timestamp``.

        Returns
        -------
        n_dropped : int
        """
        with self._lock:
            i = bisect.bisect_right(self._timestamps, timestamp) - 1
            if i <= 0:
                return 0
            del self._timestamps[:i]
            del self._samples[:i]
            return i
