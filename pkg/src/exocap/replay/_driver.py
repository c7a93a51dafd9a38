from __future__ import annotations

import dataclasses
import logging
import math
from typing import Callable, Iterator

import numpy as np

from exocap.exceptions import SafetyAbort, SeamViolation
from exocap.se3 import Pose, interpolate

from ._chunk import ActionChunk, ActionStep, SafetyEnvelope
from ._sinks import RobotSink

logger = logging.getLogger(__name__)

WORKSPACE = "workspace"
SPEED = "speed"
JOINT_DELTA = "joint-delta"

# Output rates within this relative distance of an integer multiple of the
# chunk rate land exactly on the chunk steps.
_GRID_TOL = 1e-9


@dataclasses.dataclass(frozen=True, eq=False)
class _PlannedSample:
    step: int  # chunk step this sample leads into
    position: float  # in chunk steps
    pose: Pose
    hand: np.ndarray


@dataclasses.dataclass
class ReplayReport:
    """Outcome of :func:`stream_chunk`.

    ``emitted_steps`` counts chunk steps whose every sample reached the sink;
    on abort it equals ``abort.step``.
    """

    emitted_samples: int = 0
    emitted_steps: int = 0
    rejected_samples: int = 0
    abort: SafetyAbort | None = None

    @property
    def ok(self) -> bool:
        return self.abort is None

    def raise_for_abort(self) -> None:
        if self.abort is not None:
            raise self.abort


def _interpolate_hand(a: np.ndarray, b: np.ndarray, u: float) -> np.ndarray:
    value = a + u * (b - a)
    return np.clip(value, np.minimum(a, b), np.maximum(a, b))


def _between(
    a: ActionStep, b: ActionStep, step: int, position: float, u: float
) -> _PlannedSample:
    pose = interpolate(a.pose, b.pose, u)
    hand = _interpolate_hand(a.hand, b.hand, u)
    return _PlannedSample(step, position, pose, hand)


def _knot(chunk: ActionChunk, i: int) -> _PlannedSample:
    step = chunk.steps[i]
    return _PlannedSample(i, float(i), step.pose, step.hand)


def _plan(chunk: ActionChunk, output_rate: float) -> Iterator[_PlannedSample]:
    """Yields the emission schedule: knots plus interpolated samples."""
    n = len(chunk.steps)
    ratio = output_rate * chunk.dt
    if ratio < 1.0 - _GRID_TOL:
        raise ValueError(
            f"output_rate {output_rate} Hz is below the chunk rate"
            f" {1.0 / chunk.dt} Hz."
        )

    sub = round(ratio)
    if abs(ratio - sub) <= _GRID_TOL * ratio:
        for k in range((n - 1) * sub + 1):
            i, r = divmod(k, sub)
            if r == 0:
                yield _knot(chunk, i)
            else:
                u = r / sub
                a, b = chunk.steps[i], chunk.steps[i + 1]
                yield _between(a, b, i + 1, i + u, u)
        return

    k = 0
    last_knot = -1
    while True:
        position = k / ratio
        i = math.floor(position)
        u = position - i
        if i >= n - 1:
            break
        if u <= _GRID_TOL:
            last_knot = i
            yield _knot(chunk, i)
        else:
            a, b = chunk.steps[i], chunk.steps[i + 1]
            yield _between(a, b, i + 1, position, u)
        k += 1
    if last_knot != n - 1:
        yield _knot(chunk, n - 1)


def _check_sample(
    sample: _PlannedSample,
    prev: _PlannedSample | None,
    envelope: SafetyEnvelope,
    dt: float,
) -> tuple[str, str] | None:
    translation = sample.pose.translation
    if not envelope.contains(translation):
        where = np.round(translation, 6).tolist()
        return WORKSPACE, f"translation {where} outside box"
    if prev is None:
        return None

    elapsed_steps = sample.position - prev.position
    speed = np.linalg.norm(translation - prev.pose.translation) / (
        elapsed_steps * dt
    )
    if speed > envelope.max_speed:
        return SPEED, f"{speed:.6g} m/s > {envelope.max_speed:.6g} m/s"
    delta = float(np.max(np.abs(sample.hand - prev.hand), initial=0.0))
    limit = envelope.max_joint_delta * elapsed_steps
    if delta > limit:
        return JOINT_DELTA, f"{delta:.6g} rad > {limit:.6g} rad"
    return None


def stream_chunk(
    chunk: ActionChunk,
    envelope: SafetyEnvelope,
    sink: RobotSink,
    output_rate: float | None = None,
    start_time: float = 0.0,
    pacer: Callable[[float], None] | None = None,
    lead_in: ActionStep | None = None,
) -> ReplayReport:
    """Streams an action chunk into a sink at a fixed rate.

    Samples between chunk steps are interpolated (geodesic for the pose,
    linear for the hand). Every sample, interpolated ones included, is checked
    against the envelope. The segment leading into a step is validated in
    full before any of it is emitted, so on a violation at step ``k`` exactly
    the first ``k`` steps have been emitted.

    Parameters
    ----------
    chunk : ActionChunk

    envelope : SafetyEnvelope

    sink : RobotSink

    output_rate : float, default=None
        Emission rate, Hz, at least ``1 / chunk.dt``. Defaults to the chunk
        rate.

    start_time : float, default=0.0
        Time stamp of the first sample, seconds.

    pacer : callable, default=None
        Called with each sample's time before it is sent; used to pace
        emission against a real clock. The loop never sleeps otherwise.

    lead_in : ActionStep, default=None
        Last step already sent, one ``dt`` before step 0. When given, the
        segment from it into step 0 is interpolated and checked like any
        other, so emission stays at ``output_rate`` across chunk seams. The
        lead-in itself is not sent again.

    Returns
    -------
    ReplayReport
        ``abort`` holds a :class:`SafetyAbort` (reason ``workspace``,
        ``speed`` or ``joint-delta``) if emission halted early.
    """
    if output_rate is None:
        output_rate = 1.0 / chunk.dt
    offset = 0
    planned = chunk
    if lead_in is not None:
        offset = 1
        planned = ActionChunk(chunk.dt, (lead_in,) + chunk.steps)
    samples = list(_plan(planned, output_rate))

    abort = None
    safe_until = len(samples)
    prev = None
    for j, sample in enumerate(samples):
        violation = _check_sample(sample, prev, envelope, chunk.dt)
        if violation is not None:
            reason, detail = violation
            abort = SafetyAbort(
                step=sample.step - offset, reason=reason, detail=detail
            )
            safe_until = next(
                (m for m, s in enumerate(samples) if s.step >= sample.step), j
            )
            break
        prev = sample

    report = ReplayReport(abort=abort)
    for sample in samples[offset:safe_until]:
        t = start_time + (sample.position - offset) * chunk.dt
        if pacer is not None:
            pacer(t)
        if not sink.send(t, sample.pose, sample.hand):
            report.rejected_samples += 1
        report.emitted_samples += 1
    report.emitted_steps = abort.step if abort else len(chunk.steps)

    if abort is not None:
        logger.warning("%s; %d steps emitted.", abort, report.emitted_steps)
    return report


def continuity_check(
    prev: ActionChunk, next: ActionChunk, envelope: SafetyEnvelope
) -> None:
    """Checks the seam from ``prev``'s last step to ``next``'s first step.

    The jump is treated as one step of ``next.dt``.

    Raises
    ------
    SeamViolation if the jump exceeds the speed or joint-delta limit.
    """
    a, b = prev.steps[-1], next.steps[0]
    speed = np.linalg.norm(b.pose.translation - a.pose.translation) / next.dt
    if speed > envelope.max_speed:
        raise SeamViolation(
            reason=SPEED,
            detail=f"{speed:.6g} m/s > {envelope.max_speed:.6g} m/s",
        )
    if a.hand.shape != b.hand.shape:
        raise SeamViolation(
            reason=JOINT_DELTA, detail="hand command sizes differ"
        )
    delta = float(np.max(np.abs(b.hand - a.hand), initial=0.0))
    if delta > envelope.max_joint_delta:
        raise SeamViolation(
            reason=JOINT_DELTA,
            detail=f"{delta:.6g} rad > {envelope.max_joint_delta:.6g} rad",
        )
