from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np
from scipy.spatial.transform import Rotation

from exocap.se3 import Pose
from exocap.se3._quaternion import quat_mul, quat_normalize
from exocap.stream import (
    NS_PER_S,
    FrameEncoding,
    FramePayload,
    Sample,
    StreamDescriptor,
    StreamKind,
    tick_time_ns,
)

from ._scenario import SimScenario

# Sub-streams of the scenario seed.
_SLAM_NOISE = 0


def count_samples(rate: float, duration: float) -> int:
    """Number of samples of a ``rate`` Hz source whose time stamp is before
    ``duration`` seconds."""
    limit = int(round(duration * NS_PER_S))
    n = max(int(math.floor(duration * rate)), 0)
    while tick_time_ns(n, rate) < limit:
        n += 1
    while n > 0 and tick_time_ns(n - 1, rate) >= limit:
        n -= 1
    return n


def _indices(rate: float, n: int, start_ns: int, end_ns: int) -> range:
    first = max(int(math.floor(start_ns * rate / NS_PER_S)) - 1, 0)
    while first < n and tick_time_ns(first, rate) < start_ns:
        first += 1
    last = first
    while last < n and tick_time_ns(last, rate) < end_ns:
        last += 1
    return range(first, last)


class SlamSource:
    """Simulated SLAM camera.

    Readings follow :meth:`SimScenario.slam_path` plus the scenario noise.
    Noise is drawn once per session, so any windowing of :meth:`samples`
    yields the same readings.
    """

    def __init__(self, scenario: SimScenario, stream_id: str = "slam"):
        self.scenario = scenario
        self.descriptor = StreamDescriptor(
            stream_id, StreamKind.POSE, scenario.slam_rate
        )
        self.n_samples = count_samples(scenario.slam_rate, scenario.duration)

        seed = np.random.SeedSequence([scenario.seed, _SLAM_NOISE])
        rng = np.random.default_rng(seed)
        self._translation_noise = rng.normal(
            0.0, scenario.noise_translation, size=(self.n_samples, 3)
        )
        rotvecs = rng.normal(
            0.0, scenario.noise_rotation, size=(self.n_samples, 3)
        )
        # scipy quaternions are scalar-last.
        quats = Rotation.from_rotvec(rotvecs).as_quat()
        self._rotation_noise = np.roll(quats, 1, axis=1)

    def reading(self, i: int) -> Pose:
        t = tick_time_ns(i, self.descriptor.nominal_rate) / NS_PER_S
        translation, rotation = self.scenario.slam_path(t)
        if self.scenario.noise_translation > 0:
            translation = translation + self._translation_noise[i]
        if self.scenario.noise_rotation > 0:
            noise = self._rotation_noise[i]
            rotation = quat_normalize(quat_mul(noise, rotation))
        return Pose(translation, rotation)

    def samples(self, start_ns: int, end_ns: int) -> Iterator[Sample]:
        rate = self.descriptor.nominal_rate
        for i in _indices(rate, self.n_samples, start_ns, end_ns):
            timestamp = tick_time_ns(i, rate)
            yield Sample(self.descriptor.stream_id, timestamp, self.reading(i))


class GloveSource:
    """Simulated motion-capture glove, one sinusoid per channel."""

    def __init__(self, scenario: SimScenario, stream_id: str = "glove"):
        self.scenario = scenario
        self.descriptor = StreamDescriptor(
            stream_id,
            StreamKind.JOINTS,
            scenario.glove_rate,
            width=scenario.n_channels,
        )
        self.n_samples = count_samples(scenario.glove_rate, scenario.duration)

    def samples(self, start_ns: int, end_ns: int) -> Iterator[Sample]:
        rate = self.descriptor.nominal_rate
        for i in _indices(rate, self.n_samples, start_ns, end_ns):
            timestamp = tick_time_ns(i, rate)
            yield Sample(
                self.descriptor.stream_id,
                timestamp,
                self.scenario.glove_at(timestamp / NS_PER_S),
            )


def stamp_frame(index: int, width: int, height: int, fill: int = 0) -> bytes:
    """GRAY8 blob of solid ``fill + index`` with the frame index in its first
    bytes (little-endian u32)."""
    data = bytearray([(fill + index) % 256]) * (width * height)
    stamp = (index % 2**32).to_bytes(4, "little")
    n = min(len(stamp), len(data))
    data[:n] = stamp[:n]
    return bytes(data)


class FrameSource:
    """Simulated camera delivering stamped GRAY8 frames.

    Frames falling inside one of the scenario's stall windows for this camera
    are never delivered.
    """

    def __init__(
        self,
        scenario: SimScenario,
        camera: str,
        staleness_budget: int | None = None,
    ):
        self.scenario = scenario
        self.camera = camera
        self.descriptor = StreamDescriptor(
            camera,
            StreamKind.FRAME,
            scenario.frame_rate,
            staleness_budget=staleness_budget,
        )
        self.n_samples = count_samples(scenario.frame_rate, scenario.duration)
        self._fill = 0
        if camera in scenario.cameras:
            self._fill = 64 * scenario.cameras.index(camera)

    def samples(self, start_ns: int, end_ns: int) -> Iterator[Sample]:
        rate = self.descriptor.nominal_rate
        width, height = self.scenario.frame_size
        for i in _indices(rate, self.n_samples, start_ns, end_ns):
            timestamp = tick_time_ns(i, rate)
            if self.scenario.stalled(self.camera, timestamp / NS_PER_S):
                continue
            frame = FramePayload(
                stamp_frame(i, width, height, self._fill),
                FrameEncoding.GRAY8,
                width,
                height,
            )
            yield Sample(self.camera, timestamp, frame)


class MappedSource:
    """Producer applying ``func`` to every payload of another producer.

    Parameters
    ----------
    source : Producer

    descriptor : StreamDescriptor
        Descriptor of the mapped stream.

    func : callable
        Payload transform.
    """

    def __init__(self, source, descriptor: StreamDescriptor, func: Callable):
        self.source = source
        self.descriptor = descriptor
        self.func = func

    def samples(self, start_ns: int, end_ns: int) -> Iterator[Sample]:
        for sample in self.source.samples(start_ns, end_ns):
            payload = self.func(sample.payload)
            yield Sample(self.descriptor.stream_id, sample.timestamp, payload)
