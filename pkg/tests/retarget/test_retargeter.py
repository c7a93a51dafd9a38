import unittest

import numpy as np
from numpy.testing import assert_allclose

from exocap.exceptions import DegenerateRange, SourceIndexOutOfRange
from exocap.retarget import (
    GloveRetargeter,
    RetargetMap,
    builtin_hand_names,
    calibrate_map,
    get_hand_model,
    retarget,
)

N_FRAMES = 10_000
N_CHANNELS = 20


class TestCalibrateMap(unittest.TestCase):
    def setUp(self):
        self.model = get_hand_model("inspire6")
        self.open = np.zeros(6)
        self.closed = np.full(6, 2.0)

    def test_endpoints_hit_limits(self):
        map_ = calibrate_map(self.open, self.closed, list(range(6)), self.model)
        assert_allclose(retarget(self.open, map_, self.model), self.model.lower)
        assert_allclose(
            retarget(self.closed, map_, self.model), self.model.upper
        )
        halfway = retarget(np.ones(6), map_, self.model)
        assert_allclose(halfway, (self.model.lower + self.model.upper) / 2)

    def test_out_of_range_readings_are_clamped(self):
        map_ = calibrate_map(self.open, self.closed, list(range(6)), self.model)
        command = retarget(np.full(6, 5.0), map_, self.model)
        assert_allclose(command, self.model.upper)

    def test_degenerate_range(self):
        closed = self.closed.copy()
        closed[3] = 0.0
        with self.assertRaises(DegenerateRange) as ctx:
            calibrate_map(self.open, closed, list(range(6)), self.model)
        assert ctx.exception.channel == 3

    def test_source_index_out_of_range(self):
        with self.assertRaises(SourceIndexOutOfRange):
            assignment = [0, 1, 2, 3, 4, 9]
            calibrate_map(self.open, self.closed, assignment, self.model)

    def test_shared_channel(self):
        # A 1-channel glove driving every joint.
        map_ = calibrate_map([0.0], [1.0], [0] * 6, self.model)
        command = retarget([0.5], map_, self.model)
        assert_allclose(command, self.model.upper / 2)

    def test_map_validation(self):
        self.assertRaises(ValueError, RetargetMap, [0], [0.0], [0.0])
        self.assertRaises(ValueError, RetargetMap, [-1], [1.0], [0.0])
        self.assertRaises(ValueError, RetargetMap, [0, 1], [1.0], [0.0])


class TestGloveRetargeter(unittest.TestCase):
    def test_fit_transform(self):
        model = get_hand_model("gripper1")
        retargeter = GloveRetargeter(model, [1])
        assert not retargeter.is_fitted()
        retargeter.fit([[0.0, 10.0], [0.0, 20.0]])
        assert retargeter.is_fitted()
        assert list(retargeter.get_feature_names_out()) == ["aperture"]
        assert retargeter.n_features_in_ == 2
        commands = retargeter.transform([[0.0, 10.0], [0.0, 15.0], [9.0, 30.0]])
        assert commands.shape == (3, 1)
        assert_allclose(commands[:, 0], [0.0, 0.5, 1.0])

    def test_fit_needs_two_frames(self):
        model = get_hand_model("gripper1")
        self.assertRaises(
            ValueError, GloveRetargeter(model, [0]).fit, [[0.0], [1.0], [2.0]]
        )

    def test_assignment_length(self):
        model = get_hand_model("inspire6")
        self.assertRaises(
            ValueError,
            GloveRetargeter(model, [0, 1]).fit,
            [[0.0] * 6, [1.0] * 6],
        )


def test_fuzz_commands_stay_valid_and_monotone():
    rs = np.random.RandomState(0)
    for name in builtin_hand_names():
        model = get_hand_model(name)
        assignment = rs.randint(N_CHANNELS, size=model.dof)
        open_frame = rs.uniform(-1.0, 1.0, size=N_CHANNELS)
        span = rs.uniform(0.1, 2.0, size=N_CHANNELS)
        span *= rs.choice([-1.0, 1.0], size=N_CHANNELS)
        retargeter = GloveRetargeter(model, list(assignment)).fit(
            np.vstack([open_frame, open_frame + span])
        )

        frames = rs.uniform(-4.0, 4.0, size=(N_FRAMES, N_CHANNELS))
        commands = retargeter.transform(frames)
        assert np.all(commands >= model.lower)
        assert np.all(commands <= model.upper)
        assert all(model.contains(c) for c in commands[:100])

        bumped = frames + rs.uniform(0.0, 0.5, size=(N_FRAMES, N_CHANNELS))
        bumped_commands = retargeter.transform(bumped)
        rising = retargeter.map_.gain > 0
        assert np.all(bumped_commands[:, rising] >= commands[:, rising])
        falling = ~rising
        assert np.all(bumped_commands[:, falling] <= commands[:, falling])
