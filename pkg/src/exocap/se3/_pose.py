from __future__ import annotations

import dataclasses

import numpy as np
from sklearn.utils import check_random_state

from exocap.exceptions import OutOfRange
from exocap.utils import checks

from ._quaternion import (
    IDENTITY_QUATERNION,
    quat_angle,
    quat_conj,
    quat_mul,
    quat_normalize,
    quat_rotate,
    quat_slerp,
    quat_to_rmat,
    rmat_to_quat,
)

# Unit-norm tolerance accepted at construction. Stored values are never
# rewritten, so deserialized poses stay bit-exact.
_NORM_TOL = 1e-6

POSE_DTYPE = np.dtype("<f8")
POSE_NBYTES = 7 * POSE_DTYPE.itemsize


@dataclasses.dataclass(frozen=True, eq=False)
class Pose:
    """Rigid transform in SE(3).

    Parameters
    ----------
    translation : array_like, shape=(3,)
        Translation in meters.

    rotation : array_like, shape=(4,)
        Unit quaternion ``(w, x, y, z)``.
    """

    translation: np.ndarray
    rotation: np.ndarray

    def __post_init__(self):
        translation = np.array(self.translation, dtype=np.float64)
        rotation = np.array(self.rotation, dtype=np.float64)
        checks.check_is_vector3(translation)
        if rotation.shape != (4,):
            raise ValueError(
                f"Expected a quaternion of shape (4,), got {rotation.shape}."
            )
        checks.check_is_finite(translation)
        checks.check_is_finite(rotation)
        norm = np.linalg.norm(rotation)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"Rotation quaternion is not unit (|q|={norm}).")
        translation.setflags(write=False)
        rotation.setflags(write=False)
        object.__setattr__(self, "translation", translation)
        object.__setattr__(self, "rotation", rotation)

    @classmethod
    def identity(cls) -> Pose:
        return cls(np.zeros(3), IDENTITY_QUATERNION)

    @classmethod
    def from_translation(cls, translation) -> Pose:
        return cls(translation, IDENTITY_QUATERNION)

    @classmethod
    def from_matrix(cls, hmat: np.ndarray) -> Pose:
        """Builds a pose from a 4x4 homogeneous matrix."""
        hmat = np.asarray(hmat, dtype=float)
        return cls(hmat[:3, 3], rmat_to_quat(hmat[:3, :3]))

    @classmethod
    def from_array(cls, values) -> Pose:
        """Builds a pose from ``[tx, ty, tz, qw, qx, qy, qz]``."""
        values = np.asarray(values, dtype=np.float64)
        return cls(values[:3], values[3:7])

    @classmethod
    def from_bytes(cls, data: bytes) -> Pose:
        """Decodes 7 little-endian float64 values."""
        if len(data) != POSE_NBYTES:
            raise ValueError(
                f"Pose payload must be {POSE_NBYTES} bytes, got {len(data)}."
            )
        return cls.from_array(np.frombuffer(data, dtype=POSE_DTYPE))

    def as_array(self) -> np.ndarray:
        return np.concatenate((self.translation, self.rotation))

    def as_matrix(self) -> np.ndarray:
        """Returns the 4x4 homogeneous matrix."""
        hmat = np.eye(4)
        hmat[:3, :3] = quat_to_rmat(self.rotation)
        hmat[:3, 3] = self.translation
        return hmat

    def to_bytes(self) -> bytes:
        """Encodes as ``tx, ty, tz, qw, qx, qy, qz`` little-endian float64."""
        return self.as_array().astype(POSE_DTYPE).tobytes()

    def equals(self, other: Pose) -> bool:
        """Bit-exact comparison."""
        return np.array_equal(
            self.translation, other.translation
        ) and np.array_equal(self.rotation, other.rotation)

    def __repr__(self):
        t = np.array2string(self.translation, precision=6)
        q = np.array2string(self.rotation, precision=6)
        return f"Pose(translation={t}, rotation={q})"


def compose(a: Pose, b: Pose) -> Pose:
    """Returns the rigid transform ``a * b``."""
    translation = a.translation + quat_rotate(a.rotation, b.translation)
    rotation = quat_normalize(quat_mul(a.rotation, b.rotation))
    return Pose(translation, rotation)


def invert(p: Pose) -> Pose:
    """Returns ``p^-1`` so that ``compose(p, invert(p))`` is the identity."""
    rotation = quat_normalize(quat_conj(p.rotation))
    translation = -quat_rotate(rotation, p.translation)
    return Pose(translation, rotation)


def interpolate(a: Pose, b: Pose, u: float) -> Pose:
    """Interpolates between two poses.

    Translation is interpolated linearly and rotation along the shortest
    arc. The endpoints ``u = 0`` and ``u = 1`` return ``a`` and ``b``
    unchanged.

    Parameters
    ----------
    a, b : Pose

    u : float
        Fraction in [0, 1].

    Returns
    -------
    Pose

    Raises
    ------
    OutOfRange if ``u`` is outside [0, 1].
    """
    if not 0.0 <= u <= 1.0:
        raise OutOfRange(name="u", value=u, low=0.0, high=1.0)
    if u == 0.0:
        return a
    if u == 1.0:
        return b
    translation = a.translation + u * (b.translation - a.translation)
    rotation = quat_slerp(a.rotation, b.rotation, u)
    return Pose(translation, rotation)


def rotation_angle_between(a: Pose, b: Pose) -> float:
    """Geodesic angle in radians between the rotations of ``a`` and ``b``."""
    return quat_angle(quat_mul(quat_conj(a.rotation), b.rotation))


def translation_distance(a: Pose, b: Pose) -> float:
    return float(np.linalg.norm(a.translation - b.translation))


def random_pose(random_state=None, translation_scale: float = 1.0) -> Pose:
    """Draws a pose with uniformly random rotation.

    Parameters
    ----------
    random_state : int, RandomState instance or None, default=None

    translation_scale : float, default=1.0
        Translation components are uniform in
        ``[-translation_scale, translation_scale]``.
    """
    random_state = check_random_state(random_state)
    translation = random_state.uniform(
        -translation_scale, translation_scale, size=3
    )
    rotation = quat_normalize(random_state.normal(size=4))
    return Pose(translation, rotation)
