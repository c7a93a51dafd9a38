import unittest

import numpy as np

from exocap.utils import checks


class TestChecks(unittest.TestCase):
    def test_is_finite(self):
        assert checks.is_finite([0.0, 1.0])
        assert not checks.is_finite([0.0, np.nan])
        assert not checks.is_finite(np.array([[np.inf]]))

    def test_dimensions(self):
        assert checks.is_1d([1, 2])
        assert not checks.is_1d([[1, 2]])
        assert checks.is_2d([[1, 2]])
        assert checks.is_vector3([1, 2, 3])
        assert not checks.is_vector3([1, 2])

    def test_check_raises(self):
        self.assertRaises(ValueError, checks.check_is_finite, [np.nan])
        self.assertRaises(ValueError, checks.check_is_1d, np.zeros((2, 2)))
        self.assertRaises(ValueError, checks.check_is_2d, np.zeros(2))
        self.assertRaises(ValueError, checks.check_is_vector3, np.zeros(4))
        checks.check_is_vector3(np.zeros(3))
