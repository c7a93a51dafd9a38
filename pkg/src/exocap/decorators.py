import abc
import functools
from typing import Any, Protocol

import numpy as np

from exocap.base import Estimator


class Check(Protocol):
    def __call__(self, X) -> None: ...


class FitTransformCallable(Protocol):
    """Fit/transform signature."""

    def __call__(estimator: Estimator, X, *args, **kwargs): ...


class CheckDecorator(abc.ABC):
    @abc.abstractmethod
    def check(self, estimator: Estimator, X, *args, **kwargs):
        pass

    def __call__(self, fit_transform: FitTransformCallable) -> Any:
        @functools.wraps(fit_transform)
        def fit_transform_wrapper(estimator: Estimator, X, *args, **kwargs):
            X = self.check(estimator, X, *args, **kwargs)
            return fit_transform(estimator, X, *args, **kwargs)

        return fit_transform_wrapper


class ArrayCheck(CheckDecorator):
    """Casts input to a validated float64 array before the call."""

    def __init__(self, ensure_2d: bool = True, force_all_finite: bool = True):
        self.ensure_2d = ensure_2d
        self.force_all_finite = force_all_finite

    def check(self, estimator: Estimator, X, *args, **kwargs) -> np.ndarray:
        return estimator.validate_data(
            X,
            ensure_2d=self.ensure_2d,
            force_all_finite=self.force_all_finite,
        )


class MultiCheck(CheckDecorator):
    def __init__(self, checks: list[Check], check_is_fitted: bool = False):
        self.checks = checks
        self.check_is_fitted = check_is_fitted

    def check(self, estimator: Estimator, X, *args, **kwargs):
        if self.check_is_fitted:
            estimator.check_is_fitted()

        for check in self.checks:
            check(X)

        return X
