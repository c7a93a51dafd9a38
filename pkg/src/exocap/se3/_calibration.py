"""SLAM-to-robot calibration.

The robot end-effector pose is recovered from the tracking camera pose as
``T_robot = T_calib * T_slam``. ``T_calib`` is solved in closed form from
recorded pose pairs: every pair yields a candidate ``robot_i * slam_i^-1``;
candidate rotations are averaged and translations are re-derived under the
averaged rotation.
"""

from __future__ import annotations

import dataclasses
import logging
import os

import numpy as np

from exocap.base import Estimator
from exocap.config import read_config
from exocap.decorators import ArrayCheck, MultiCheck
from exocap.exceptions import DegenerateInput, ParseError, TooFewPairs

from ._pose import Pose, compose, invert
from ._quaternion import (
    quat_angle,
    quat_average,
    quat_conj,
    quat_mul,
    quat_rotate,
)

logger = logging.getLogger(__name__)

DEFAULT_MIN_PAIRS = 3
DEFAULT_MAX_SPREAD = np.deg2rad(10.0)

# The degeneracy check needs redundancy to be meaningful.
_SPREAD_CHECK_MIN_PAIRS = 3


@dataclasses.dataclass(frozen=True)
class PosePair:
    """Simultaneous SLAM and robot observations of the same end-effector."""

    slam: Pose
    robot: Pose


def _check_pose_rows(X) -> None:
    if X.shape[1] != 7:
        raise ValueError(
            f"Expected pose rows [tx, ty, tz, qw, qx, qy, qz], got {X.shape[1]}"
            " columns."
        )


def _rows_to_poses(X: np.ndarray) -> list[Pose]:
    return [Pose.from_array(row) for row in X]


class CalibrationEstimator(Estimator):
    """Closed-form estimator of the SLAM-to-robot calibration transform.

    Parameters
    ----------
    min_pairs : int, default=3
        Minimum number of pose pairs required by :meth:`fit`.

    max_spread : float, default=10 degrees (in radians)
        Largest allowed angle between any candidate rotation and their
        average. Only enforced with 3 or more pairs.

    Attributes
    ----------
    calib_ : Pose
        Fitted calibration transform.

    n_pairs_ : int
        Number of pairs seen during :meth:`fit`.

    spread_ : float
        Largest candidate-to-average rotation angle, radians.
    """

    def __init__(
        self,
        min_pairs: int = DEFAULT_MIN_PAIRS,
        max_spread: float = DEFAULT_MAX_SPREAD,
    ):
        self.min_pairs = min_pairs
        self.max_spread = max_spread

    @ArrayCheck()
    @MultiCheck(checks=[_check_pose_rows])
    def fit(self, X, y):
        """Solves the calibration transform.

        Parameters
        ----------
        X : array_like, shape=(n_pairs, 7)
            SLAM poses as ``[tx, ty, tz, qw, qx, qy, qz]`` rows.

        y : array_like, shape=(n_pairs, 7)
            Robot poses, same layout and pairing order as ``X``.

        Returns
        -------
        self : CalibrationEstimator
        """
        y = self.validate_data(y)
        _check_pose_rows(y)
        if len(X) != len(y):
            raise ValueError(
                f"X and y must hold the same number of poses, got {len(X)} and"
                f" {len(y)}."
            )
        if self.min_pairs < 1:
            raise ValueError(f"min_pairs must be >= 1, got {self.min_pairs}.")
        if len(X) < self.min_pairs:
            raise TooFewPairs(min_pairs=self.min_pairs, n_pairs=len(X))

        slam = _rows_to_poses(X)
        robot = _rows_to_poses(y)
        candidates = [compose(r, invert(s)) for s, r in zip(slam, robot)]
        rotations = np.array([c.rotation for c in candidates])
        rotation = quat_average(rotations)

        spreads = np.array(
            [quat_angle(quat_mul(quat_conj(rotation), q)) for q in rotations]
        )
        self.spread_ = float(spreads.max())
        if (
            len(candidates) >= _SPREAD_CHECK_MIN_PAIRS
            and self.spread_ > self.max_spread
        ):
            raise DegenerateInput(
                spread_deg=np.rad2deg(self.spread_),
                max_spread_deg=np.rad2deg(self.max_spread),
                pair=int(spreads.argmax()),
            )

        translations = np.array(
            [
                r.translation - quat_rotate(rotation, s.translation)
                for s, r in zip(slam, robot)
            ]
        )
        self.calib_ = Pose(translations.mean(axis=0), rotation)
        self.n_pairs_ = len(candidates)
        logger.info(
            "Calibration solved from %d pairs (rotation spread %.4f deg).",
            self.n_pairs_,
            np.rad2deg(self.spread_),
        )
        return self

    @ArrayCheck()
    @MultiCheck(checks=[_check_pose_rows], check_is_fitted=True)
    def predict(self, X) -> np.ndarray:
        """Maps SLAM poses into the robot frame.

        Parameters
        ----------
        X : array_like, shape=(n, 7)

        Returns
        -------
        np.ndarray, shape=(n, 7)
        """
        poses = [apply_calibration(self.calib_, s) for s in _rows_to_poses(X)]
        return np.array([p.as_array() for p in poses]).reshape(-1, 7)

    @ArrayCheck()
    @MultiCheck(checks=[_check_pose_rows], check_is_fitted=True)
    def residuals(self, X, y) -> tuple[np.ndarray, np.ndarray]:
        """Per-pair residuals of ``y`` against the calibrated ``X``.

        Returns
        -------
        translation : np.ndarray, shape=(n,)
            Euclidean distances, meters.

        rotation : np.ndarray, shape=(n,)
            Geodesic angles, radians.
        """
        y = self.validate_data(y)
        predicted = self.predict(X)
        translation = np.linalg.norm(predicted[:, :3] - y[:, :3], axis=1)
        rotation = np.array(
            [
                quat_angle(quat_mul(quat_conj(p[3:]), r[3:]))
                for p, r in zip(predicted, y)
            ]
        )
        return translation, rotation

    def score(self, X, y) -> float:
        """Negative RMS translation residual (higher is better)."""
        translation, _ = self.residuals(X, y)
        return -float(np.sqrt(np.mean(translation**2)))


def pairs_to_arrays(pairs: list[PosePair]) -> tuple[np.ndarray, np.ndarray]:
    slam = np.array([p.slam.as_array() for p in pairs]).reshape(-1, 7)
    robot = np.array([p.robot.as_array() for p in pairs]).reshape(-1, 7)
    return slam, robot


def apply_calibration(t_calib: Pose, t_slam: Pose) -> Pose:
    """Returns ``T_robot = T_calib * T_slam``."""
    return compose(t_calib, t_slam)


def estimate_calibration(
    pairs: list[PosePair],
    min_pairs: int = DEFAULT_MIN_PAIRS,
    max_spread: float = DEFAULT_MAX_SPREAD,
) -> Pose:
    """Estimates the calibration transform from pose pairs.

    Parameters
    ----------
    pairs : list of PosePair

    min_pairs : int, default=3

    max_spread : float, default=10 degrees (in radians)

    Returns
    -------
    Pose

    Raises
    ------
    TooFewPairs if fewer than ``min_pairs`` pairs are given.
    DegenerateInput if candidate rotations disagree by more than
    ``max_spread``.
    """
    if len(pairs) < max(min_pairs, 1):
        raise TooFewPairs(min_pairs=min_pairs, n_pairs=len(pairs))
    slam, robot = pairs_to_arrays(pairs)
    estimator = CalibrationEstimator(min_pairs=min_pairs, max_spread=max_spread)
    return estimator.fit(slam, robot).calib_


def read_pose_pairs(path: str | os.PathLike) -> list[PosePair]:
    """Reads a pose-pair file.

    Every ``pair:`` line holds 14 numbers: the SLAM pose followed by the
    robot pose, each as ``tx ty tz qw qx qy qz``.
    """
    config = read_config(path)
    pairs = []
    for entry in config.get_all("pair"):
        try:
            values = [float(tok) for tok in entry.tokens]
        except ValueError:
            raise ParseError(line=entry.line, reason="non-numeric pair value")
        if len(values) != 14:
            raise ParseError(
                line=entry.line,
                reason=f"expected 14 numbers, got {len(values)}",
            )
        try:
            pairs.append(
                PosePair(
                    slam=Pose.from_array(values[:7]),
                    robot=Pose.from_array(values[7:]),
                )
            )
        except ValueError as exc:
            raise ParseError(line=entry.line, reason=str(exc)) from exc
    return pairs
