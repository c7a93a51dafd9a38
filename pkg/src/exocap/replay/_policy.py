from __future__ import annotations

import logging
from typing import Iterable, Iterator, Protocol

import numpy as np

from exocap.exceptions import GapInActions, SafetyAbort
from exocap.retarget import HandModel
from exocap.stream import SyncedFrame, is_gap

from ._chunk import ActionChunk, ActionStep, SafetyEnvelope
from ._driver import ReplayReport, continuity_check, stream_chunk
from ._sinks import RobotSink

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_LEN = 30


class Policy(Protocol):
    """Source of action chunks at deployment time."""

    def chunks(self) -> Iterator[ActionChunk]: ...


def replay_policy(
    records: Iterable[SyncedFrame],
    dt: float,
    pose_stream: str = "ee_pose",
    hand_stream: str = "hand",
    chunk_len: int = DEFAULT_CHUNK_LEN,
    model: HandModel | None = None,
) -> list[ActionChunk]:
    """Partitions recorded actions into fixed-length chunks.

    Parameters
    ----------
    records : iterable of SyncedFrame
        Episode records in tick order.

    dt : float
        Seconds per tick.

    pose_stream, hand_stream : str
        Streams carrying the end-effector pose and the hand command.

    chunk_len : int, default=30
        Steps per chunk; the last chunk may be shorter.

    model : HandModel, default=None
        Hand the commands must be valid for.

    Returns
    -------
    list of ActionChunk

    Raises
    ------
    GapInActions if an action stream has a gap or ticks are skipped.
    """
    if chunk_len < 1:
        raise ValueError(f"chunk_len must be >= 1, got {chunk_len}.")

    steps: list[ActionStep] = []
    last_tick = None
    for record in records:
        if last_tick is not None and record.tick_index != last_tick + 1:
            raise GapInActions(stream_id="*", tick_index=last_tick + 1)
        last_tick = record.tick_index
        for stream_id in (pose_stream, hand_stream):
            if stream_id not in record.entries:
                raise KeyError(f"Record has no stream '{stream_id}'.")
            if is_gap(record.entries[stream_id]):
                raise GapInActions(
                    stream_id=stream_id, tick_index=record.tick_index
                )
        steps.append(
            ActionStep(
                pose=record.entries[pose_stream],
                hand=np.asarray(record.entries[hand_stream]),
            )
        )

    return [
        ActionChunk(dt=dt, steps=tuple(steps[i : i + chunk_len]), model=model)
        for i in range(0, len(steps), chunk_len)
    ]


class ReplayPolicy:
    """Policy stub that replays a recorded episode's actions.

    Parameters
    ----------
    records : iterable of SyncedFrame

    dt : float

    chunk_len : int, default=30

    pose_stream, hand_stream : str

    model : HandModel, default=None
    """

    def __init__(
        self,
        records: Iterable[SyncedFrame],
        dt: float,
        chunk_len: int = DEFAULT_CHUNK_LEN,
        pose_stream: str = "ee_pose",
        hand_stream: str = "hand",
        model: HandModel | None = None,
    ):
        self.dt = dt
        self.chunk_len = chunk_len
        self.pose_stream = pose_stream
        self.hand_stream = hand_stream
        self.model = model
        self._chunks = replay_policy(
            records,
            dt=dt,
            pose_stream=pose_stream,
            hand_stream=hand_stream,
            chunk_len=chunk_len,
            model=model,
        )

    def chunks(self) -> Iterator[ActionChunk]:
        return iter(self._chunks)


def run_policy(
    policy: Policy,
    envelope: SafetyEnvelope,
    sink: RobotSink,
    output_rate: float | None = None,
) -> ReplayReport:
    """Streams every chunk of a policy, checking each seam first.

    Stops at the first safety abort; seam violations propagate. Above the
    chunk rate, the segment across each seam is interpolated too, so the
    whole run is emitted on one fixed-rate grid.

    Returns
    -------
    ReplayReport
        Totals over every streamed chunk; ``abort.step`` counts steps from
        the start of the run.
    """
    total = ReplayReport()
    prev = None
    start_time = 0.0
    for chunk in policy.chunks():
        if prev is not None:
            continuity_check(prev, chunk, envelope)
        report = stream_chunk(
            chunk,
            envelope,
            sink,
            output_rate=output_rate,
            start_time=start_time,
            lead_in=prev.steps[-1] if prev is not None else None,
        )
        total.emitted_samples += report.emitted_samples
        total.emitted_steps += report.emitted_steps
        total.rejected_samples += report.rejected_samples
        if report.abort is not None:
            total.abort = SafetyAbort(
                step=total.emitted_steps,
                reason=report.abort.reason,
                detail=report.abort.detail,
            )
            break
        prev = chunk
        start_time += len(chunk) * chunk.dt
    logger.info(
        "Replay finished: %d steps, %d samples emitted.",
        total.emitted_steps,
        total.emitted_samples,
    )
    return total
