"""
The :mod:`exocap.se3` module implements rigid-body pose algebra and the
SLAM-to-robot calibration.
"""

from ._calibration import (
    CalibrationEstimator,
    PosePair,
    apply_calibration,
    estimate_calibration,
    pairs_to_arrays,
    read_pose_pairs,
)
from ._pose import (
    POSE_NBYTES,
    Pose,
    compose,
    interpolate,
    invert,
    random_pose,
    rotation_angle_between,
    translation_distance,
)
from ._quaternion import axisangle_to_quat, quat_average, quat_slerp

__all__ = [
    "CalibrationEstimator",
    "POSE_NBYTES",
    "Pose",
    "PosePair",
    "apply_calibration",
    "axisangle_to_quat",
    "compose",
    "estimate_calibration",
    "interpolate",
    "invert",
    "pairs_to_arrays",
    "quat_average",
    "quat_slerp",
    "random_pose",
    "read_pose_pairs",
    "rotation_angle_between",
    "translation_distance",
]
