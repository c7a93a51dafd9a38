"""
The :mod:`exocap.retarget` module maps glove readings onto configurable
dexterous hands.
"""

from ._hand import (
    HandModel,
    JointLimit,
    builtin_hand_names,
    get_hand_model,
    load_hand_model,
    read_hand_model,
)
from ._retargeter import (
    GloveRetargeter,
    RetargetMap,
    apply_map,
    calibrate_map,
    retarget,
)

__all__ = [
    "GloveRetargeter",
    "HandModel",
    "JointLimit",
    "RetargetMap",
    "apply_map",
    "builtin_hand_names",
    "calibrate_map",
    "get_hand_model",
    "load_hand_model",
    "read_hand_model",
    "retarget",
]
