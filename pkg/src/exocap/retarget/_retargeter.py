from __future__ import annotations

import dataclasses

import numpy as np

from exocap.base import Transformer
from exocap.decorators import ArrayCheck, MultiCheck
from exocap.exceptions import DegenerateRange, SourceIndexOutOfRange
from exocap.utils import checks

from ._hand import HandModel


@dataclasses.dataclass(frozen=True, eq=False)
class RetargetMap:
    """Per-joint affine glove-to-hand mapping.

    ``target_j = clip(gain_j * glove[source_index_j] + offset_j, limits_j)``
    """

    source_index: np.ndarray
    gain: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        source_index = np.array(self.source_index, dtype=np.intp)
        gain = np.array(self.gain, dtype=np.float64)
        offset = np.array(self.offset, dtype=np.float64)
        if not (source_index.shape == gain.shape == offset.shape):
            raise ValueError("source_index, gain and offset lengths differ.")
        if np.any(source_index < 0):
            raise ValueError("source indices must be non-negative.")
        if not (np.all(np.isfinite(gain)) and np.all(gain != 0)):
            raise ValueError("gains must be finite and nonzero.")
        checks.check_is_finite(offset)
        for name, value in (
            ("source_index", source_index),
            ("gain", gain),
            ("offset", offset),
        ):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n_joints(self) -> int:
        return len(self.gain)


def _check_two_frames(X) -> None:
    if X.shape[0] != 2:
        raise ValueError(
            f"Expected the [open, closed] glove frames, got {X.shape[0]} rows."
        )


class GloveRetargeter(Transformer):
    """Maps glove joint readings onto a dexterous hand's joint space.

    Fitting on an open-hand and a closed-hand glove frame chooses each
    joint's affine coefficients so the open frame lands on the joint's lower
    limit and the closed frame on its upper limit.

    Parameters
    ----------
    model : HandModel
        Target hand.

    assignment : list of int
        Glove channel driving each hand joint, in the model's joint order.

    Attributes
    ----------
    map_ : RetargetMap
        Fitted mapping.
    """

    def __init__(self, model: HandModel, assignment: list[int]):
        self.model = model
        self.assignment = assignment

    def _check_assignment(self, n_channels: int) -> np.ndarray:
        assignment = np.asarray(self.assignment, dtype=np.intp)
        if assignment.shape != (self.model.dof,):
            raise ValueError(
                f"Assignment must name one glove channel per joint"
                f" ({self.model.dof}), got {assignment.shape[0]}."
            )
        for index in assignment:
            if not 0 <= index < n_channels:
                raise SourceIndexOutOfRange(index=int(index), length=n_channels)
        return assignment

    @ArrayCheck()
    @MultiCheck(checks=[_check_two_frames])
    def fit(self, X, y=None):
        """Two-pose calibration.

        Parameters
        ----------
        X : array_like, shape=(2, n_channels)
            Open-hand frame followed by the closed-hand frame.

        y : None

        Returns
        -------
        self : GloveRetargeter
        """
        open_frame, closed_frame = X
        assignment = self._check_assignment(X.shape[1])
        span = closed_frame[assignment] - open_frame[assignment]
        for joint, channel in enumerate(assignment):
            if span[joint] == 0:
                raise DegenerateRange(
                    channel=int(channel), value=open_frame[channel]
                )
        lower, upper = self.model.lower, self.model.upper
        gain = (upper - lower) / span
        offset = lower - gain * open_frame[assignment]
        self.map_ = RetargetMap(assignment, gain, offset)
        self.n_features_in_ = X.shape[1]
        return self

    @ArrayCheck()
    @MultiCheck(checks=[checks.check_is_2d], check_is_fitted=True)
    def transform(self, X) -> np.ndarray:
        """Retargets glove frames.

        Parameters
        ----------
        X : array_like, shape=(n_frames, n_channels)

        Returns
        -------
        commands : np.ndarray, shape=(n_frames, dof)
        """
        return apply_map(X, self.map_, self.model)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        """Hand joint names, in command order."""
        return np.asarray(self.model.joint_names, dtype=object)


def apply_map(X: np.ndarray, map: RetargetMap, model: HandModel) -> np.ndarray:
    """Vectorized affine mapping plus clamping for a batch of frames."""
    if map.n_joints != model.dof:
        raise ValueError(
            f"Map drives {map.n_joints} joints, hand '{model.name}' has"
            f" {model.dof}."
        )
    n_channels = X.shape[1]
    too_far = map.source_index[map.source_index >= n_channels]
    if too_far.size:
        raise SourceIndexOutOfRange(index=int(too_far[0]), length=n_channels)
    commands = map.gain * X[:, map.source_index] + map.offset
    return np.clip(commands, model.lower, model.upper)


def calibrate_map(
    open_frame,
    closed_frame,
    assignment: list[int],
    model: HandModel,
) -> RetargetMap:
    """Fits the affine map from open/closed glove calibration frames.

    Raises
    ------
    DegenerateRange if both frames agree on an assigned channel.
    SourceIndexOutOfRange if an assignment exceeds the frame length.
    """
    X = np.vstack([np.asarray(open_frame), np.asarray(closed_frame)])
    return GloveRetargeter(model, assignment).fit(X).map_


def retarget(frame, map: RetargetMap, model: HandModel) -> np.ndarray:
    """Maps one glove frame onto a hand command.

    Parameters
    ----------
    frame : array_like, shape=(n_channels,)

    map : RetargetMap

    model : HandModel

    Returns
    -------
    command : np.ndarray, shape=(model.dof,)
        Always within the joint limits of ``model``.

    Raises
    ------
    SourceIndexOutOfRange
    """
    frame = np.asarray(frame, dtype=np.float64)
    checks.check_is_1d(frame)
    checks.check_is_finite(frame)
    return apply_map(frame.reshape(1, -1), map, model)[0]
