import numpy as np


def is_finite(X) -> bool:
    """Returns True if every element of ``X`` is finite.

    Parameters
    ----------
    X : array_like

    Returns
    -------
    bool
    """
    return bool(np.all(np.isfinite(np.asarray(X, dtype=float))))


def is_1d(X) -> bool:
    """Returns True if input data in 1-dimensional

    Parameters
    ----------
    X : array_like

    Returns
    -------
    bool
    """
    return len(np.shape(X)) == 1


def is_2d(X) -> bool:
    """Returns True if input data in 2-dimensional

    Parameters
    ----------
    X : array_like

    Returns
    -------
    bool
    """
    return len(np.shape(X)) == 2


def is_vector3(X) -> bool:
    return np.shape(X) == (3,)


def check_is_finite(X) -> None:
    """Validates every element of input data is finite."""
    if not is_finite(X):
        raise ValueError("Input contains NaN or infinite values.")


def check_is_1d(X) -> None:
    """Checks input data is 1-dimensional"""
    if not is_1d(X):
        raise ValueError(
            f"Expected 1-dimensional input, got shape {np.shape(X)}."
        )


def check_is_2d(X) -> None:
    """Checks input data is 2-dimensional"""
    if not is_2d(X):
        raise ValueError(
            f"Expected 2-dimensional input, got shape {np.shape(X)}."
        )


def check_is_vector3(X) -> None:
    if not is_vector3(X):
        raise ValueError(f"Expected a 3-vector, got shape {np.shape(X)}.")
