from __future__ import annotations

import contextlib
import logging
import os

from joblib import Parallel, delayed

from exocap.retarget import calibrate_map, get_hand_model, retarget
from exocap.se3 import apply_calibration
from exocap.store import EpisodeMeta, begin_episode
from exocap.stream import (
    StreamDescriptor,
    StreamKind,
    StreamSynchronizer,
    drive_producer,
    tick_time_ns,
)

from ._pipeline import PipelineConfig
from ._scenario import SimScenario
from ._sources import (
    FrameSource,
    GloveSource,
    MappedSource,
    SlamSource,
    count_samples,
)

logger = logging.getLogger(__name__)

POSE_STREAM = "ee_pose"
HAND_STREAM = "hand"


def build_producers(scenario: SimScenario, config: PipelineConfig) -> list:
    """Simulated producers of the default roster.

    ``ee_pose`` carries calibrated SLAM poses and ``hand`` retargeted glove
    readings. Camera streams have a staleness budget of half a frame period,
    so every missing frame shows up as a gap.
    """
    model = get_hand_model(config.hand_model)
    assignment = config.resolve_assignment(model.dof, scenario.n_channels)
    retarget_map = calibrate_map(
        scenario.glove_open(), scenario.glove_closed(), assignment, model
    )

    slam = SlamSource(scenario)
    ee_pose = MappedSource(
        slam,
        StreamDescriptor(POSE_STREAM, StreamKind.POSE, scenario.slam_rate),
        lambda pose: apply_calibration(config.calibration, pose),
    )
    hand = MappedSource(
        GloveSource(scenario),
        StreamDescriptor(
            HAND_STREAM, StreamKind.JOINTS, scenario.glove_rate, width=model.dof
        ),
        lambda frame: retarget(frame, retarget_map, model),
    )
    frame_budget = int(round(0.5e9 / scenario.frame_rate))
    cameras = [
        FrameSource(scenario, camera, staleness_budget=frame_budget)
        for camera in scenario.cameras
    ]
    return [ee_pose, hand, *cameras]


def _produce(sync, handles, producers, start_ns, end_ns, parallel):
    jobs = (
        delayed(drive_producer)(sync, handle, producer, start_ns, end_ns)
        for handle, producer in zip(handles, producers)
    )
    if parallel is None:
        return [func(*args, **kwargs) for func, args, kwargs in jobs]
    return parallel(jobs)


def run_scenario(
    scenario: SimScenario,
    config: PipelineConfig | None = None,
    out: str | os.PathLike = ".",
    name: str | None = None,
    concurrent: bool = False,
) -> str:
    """Simulates a capture session and records it as an episode.

    Producers push one window of samples at a time (concurrently through a
    joblib thread pool, or one after the other); once every producer is done
    the window's master ticks are aligned and appended to the episode. Both
    modes record identical episodes. The wall clock is never consulted.

    Parameters
    ----------
    scenario : SimScenario

    config : PipelineConfig, default=None
        Defaults to ``PipelineConfig()``.

    out : str or PathLike, default="."
        Dataset directory.

    name : str, default=None
        Episode directory name.

    concurrent : bool, default=False
        Drive the producers from worker threads.

    Returns
    -------
    path : str
        The finalized episode directory.
    """
    if config is None:
        config = PipelineConfig()
    model = get_hand_model(config.hand_model)
    producers = build_producers(scenario, config)
    roster = [producer.descriptor for producer in producers]

    sync = StreamSynchronizer(config.tick_rate, config.capacity)
    handles = [sync.register_stream(desc) for desc in roster]
    sync.start()

    meta = EpisodeMeta(
        task_name=config.task_name,
        operator_id=config.operator_id,
        tick_rate=config.tick_rate,
        roster=tuple(roster),
        success=config.success,
        phase=config.phase,
        method=config.method,
        hand_model=model.name,
    )
    n_ticks = count_samples(config.tick_rate, scenario.duration)
    lookahead = max(desc.staleness_budget for desc in roster) + 1
    logger.info(
        "Simulating %d ticks (%s producers).",
        n_ticks,
        "concurrent" if concurrent else "sequential",
    )

    produced_until = 0
    with contextlib.ExitStack() as stack:
        writer = stack.enter_context(begin_episode(meta, out, name))
        stack.callback(sync.stop)
        parallel = None
        if concurrent:
            parallel = stack.enter_context(
                Parallel(n_jobs=len(producers), prefer="threads")
            )
        for first in range(0, n_ticks, config.window):
            last = min(first + config.window, n_ticks)
            end_ns = tick_time_ns(last - 1, config.tick_rate) + lookahead
            _produce(sync, handles, producers, produced_until, end_ns, parallel)
            produced_until = end_ns
            for tick_index in range(first, last):
                writer.append(sync.align_tick(tick_index))
            sync.discard_before(tick_time_ns(last, config.tick_rate))

    for stream_id, stats in sync.stats().items():
        if stats.rejected_overflow:
            logger.warning(
                "Stream %s dropped %d samples on overflow.",
                stream_id,
                stats.rejected_overflow,
            )
    return writer.path
