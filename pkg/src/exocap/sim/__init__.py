"""
The :mod:`exocap.sim` module simulates capture sessions behind the producer
interface and records them end to end.
"""

from ._harness import HAND_STREAM, POSE_STREAM, build_producers, run_scenario
from ._pipeline import (
    PipelineConfig,
    load_pipeline_config,
    read_pipeline_config,
)
from ._scenario import (
    CAMERAS,
    FrameStall,
    GloveChannel,
    SimScenario,
    load_scenario,
    read_scenario,
)
from ._sources import (
    FrameSource,
    GloveSource,
    MappedSource,
    SlamSource,
    count_samples,
    stamp_frame,
)
from ._synthetic import (
    DEPLOYMENT_TASKS,
    REFERENCE_TASKS,
    SyntheticTask,
    make_synthetic_dataset,
)

__all__ = [
    "CAMERAS",
    "DEPLOYMENT_TASKS",
    "FrameSource",
    "FrameStall",
    "GloveChannel",
    "GloveSource",
    "HAND_STREAM",
    "MappedSource",
    "POSE_STREAM",
    "PipelineConfig",
    "REFERENCE_TASKS",
    "SimScenario",
    "SlamSource",
    "SyntheticTask",
    "build_producers",
    "count_samples",
    "load_pipeline_config",
    "load_scenario",
    "make_synthetic_dataset",
    "read_pipeline_config",
    "read_scenario",
    "run_scenario",
    "stamp_frame",
]
