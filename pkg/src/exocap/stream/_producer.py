from __future__ import annotations

from typing import Iterator, Protocol, runtime_checkable

from ._synchronizer import StreamHandle, StreamSynchronizer
from ._types import Sample, StreamDescriptor


@runtime_checkable
class Producer(Protocol):
    """Push-side source of one stream.

    Simulated sources and device drivers implement the same interface.
    """

    descriptor: StreamDescriptor

    def samples(self, start_ns: int, end_ns: int) -> Iterator[Sample]:
        """Yields the stream's samples with ``start_ns <= timestamp < end_ns``
        in timestamp order."""
        ...


def drive_producer(
    sync: StreamSynchronizer,
    handle: StreamHandle,
    producer: Producer,
    start_ns: int,
    end_ns: int,
) -> int:
    """Pushes a producer's samples in ``[start_ns, end_ns)``.

    Returns
    -------
    n_accepted : int
    """
    n_accepted = 0
    for sample in producer.samples(start_ns, end_ns):
        n_accepted += sync.push(handle, sample)
    return n_accepted
