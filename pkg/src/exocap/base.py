from __future__ import annotations

import numpy as np
import sklearn
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array


class Estimator(BaseEstimator):
    """Base Estimator.

    Parameters are stored verbatim in ``__init__``; fitted state lives in
    attributes ending with a trailing underscore.
    """

    def validate_data(
        self,
        X,
        ensure_2d: bool = True,
        force_all_finite: bool = True,
    ) -> np.ndarray:
        """Casts ``X`` to a float64 ndarray and validates it.

        Parameters
        ----------
        X : array_like

        ensure_2d : bool, default=True
            Whether to raise if ``X`` is not 2-dimensional.

        force_all_finite : bool, default=True
            Whether to raise on NaN or infinite values.

        Returns
        -------
        X : np.ndarray
        """
        return check_array(
            X,
            dtype=np.float64,
            ensure_2d=ensure_2d,
            ensure_all_finite=force_all_finite,
        )

    def check_is_fitted(self) -> None:
        """Perform is_fitted validation for this estimator.

        Checks if this estimator is fitted by verifying the presence of
        fitted attributes (ending with a trailing underscore) and otherwise
        raises a NotFittedError

        Raises
        ------
        NotFittedError if not fitted.
        """
        sklearn.utils.validation.check_is_fitted(self)

    def is_fitted(self) -> bool:
        """Returns True if estimator is fitted else False.

        Returns
        -------
        is_fitted : bool
            True if estimator is fitted else False.
        """
        try:
            self.check_is_fitted()
        except sklearn.exceptions.NotFittedError:
            return False
        return True


class Transformer(Estimator, TransformerMixin):
    """Base Transformer."""
