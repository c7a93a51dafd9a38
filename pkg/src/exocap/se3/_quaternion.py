"""Unit quaternion helpers, scalar-first ``(w, x, y, z)`` convention."""

import numpy as np
from scipy.spatial.transform import Rotation

IDENTITY_QUATERNION = np.array([1.0, 0.0, 0.0, 0.0])
_TOL = 1e-12


def quat_normalize(quat: np.ndarray) -> np.ndarray:
    return quat / np.linalg.norm(quat)


def positive_leading_quat(quat: np.ndarray) -> np.ndarray:
    """Returns the equivalent quaternion with a non-negative scalar part."""
    return -quat if quat[0] < 0 else quat


def quat_conj(quat: np.ndarray) -> np.ndarray:
    return np.array([quat[0], -quat[1], -quat[2], -quat[3]])


def quat_mul(quat1: np.ndarray, quat2: np.ndarray) -> np.ndarray:
    """Hamilton product ``quat1 * quat2``."""
    w1, x1, y1, z1 = quat1
    w2, x2, y2, z2 = quat2
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def quat_rotate(quat: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Rotates ``vec`` by the unit quaternion ``quat``."""
    w = quat[0]
    u = quat[1:]
    uv = np.cross(u, vec)
    return vec + 2.0 * (w * uv + np.cross(u, uv))


def quat_angle(quat: np.ndarray) -> float:
    """Rotation angle in [0, pi] represented by a unit quaternion."""
    return 2.0 * np.arctan2(np.linalg.norm(quat[1:]), abs(quat[0]))


def quat_to_axisangle(quat: np.ndarray) -> tuple[np.ndarray, float]:
    """Returns (unit axis, angle) with the angle in [0, pi]."""
    quat = positive_leading_quat(quat)
    sin_half = np.linalg.norm(quat[1:])
    if sin_half < _TOL:
        return np.array([1.0, 0.0, 0.0]), 0.0
    return quat[1:] / sin_half, 2.0 * np.arctan2(sin_half, quat[0])


def axisangle_to_quat(axis: np.ndarray, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    half = 0.5 * angle
    return np.concatenate(([np.cos(half)], np.sin(half) * axis))


def quat_slerp(quat0: np.ndarray, quat1: np.ndarray, u: float) -> np.ndarray:
    """Shortest-arc spherical interpolation.

    The relative rotation ``conj(quat0) * quat1`` is brought to the positive
    hemisphere, so both signs of ``quat1`` give the same result.
    """
    rel = positive_leading_quat(quat_mul(quat_conj(quat0), quat1))
    axis, angle = quat_to_axisangle(rel)
    step = axisangle_to_quat(axis, u * angle)
    return quat_normalize(quat_mul(quat0, step))


def quat_to_rmat(quat: np.ndarray) -> np.ndarray:
    w, x, y, z = quat
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def rmat_to_quat(rmat: np.ndarray) -> np.ndarray:
    """Converts a rotation matrix to a unit quaternion."""
    x, y, z, w = Rotation.from_matrix(rmat).as_quat()
    return positive_leading_quat(quat_normalize(np.array([w, x, y, z])))


def quat_average(quats: np.ndarray, weights: np.ndarray | None = None):
    """Average of unit quaternions.

    The eigenvector with the largest eigenvalue of the summed outer products
    ``sum_i w_i q_i q_i^T``; invariant to the sign of each ``q_i``.

    Parameters
    ----------
    quats : np.ndarray, shape=(n, 4)

    weights : np.ndarray, shape=(n,), default=None

    Returns
    -------
    quat : np.ndarray, shape=(4,)
    """
    quats = np.asarray(quats, dtype=float)
    if weights is None:
        weights = np.ones(len(quats))
    accumulator = np.einsum("i,ij,ik->jk", weights, quats, quats)
    _, eigenvectors = np.linalg.eigh(accumulator)
    return positive_leading_quat(quat_normalize(eigenvectors[:, -1]))
