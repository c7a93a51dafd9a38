"""
The :mod:`exocap.replay` module streams action chunks into robot sinks under
a safety envelope.
"""

from ._chunk import ActionChunk, ActionStep, SafetyEnvelope, read_envelope
from ._driver import (
    JOINT_DELTA,
    SPEED,
    WORKSPACE,
    ReplayReport,
    continuity_check,
    stream_chunk,
)
from ._policy import (
    DEFAULT_CHUNK_LEN,
    Policy,
    ReplayPolicy,
    replay_policy,
    run_policy,
)
from ._sinks import LoggingSink, RecordingSink, RobotSink, make_sink

__all__ = [
    "ActionChunk",
    "ActionStep",
    "DEFAULT_CHUNK_LEN",
    "JOINT_DELTA",
    "LoggingSink",
    "Policy",
    "RecordingSink",
    "ReplayPolicy",
    "ReplayReport",
    "RobotSink",
    "SPEED",
    "SafetyEnvelope",
    "WORKSPACE",
    "continuity_check",
    "make_sink",
    "read_envelope",
    "replay_policy",
    "run_policy",
    "stream_chunk",
]
