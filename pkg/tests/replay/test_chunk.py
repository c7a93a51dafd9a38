import os
import unittest

import numpy as np

from exocap.definitions import SIM_FIXTURES_DIR
from exocap.exceptions import InvalidChunk, InvalidEnvelope
from exocap.replay import ActionChunk, ActionStep, SafetyEnvelope, read_envelope
from exocap.retarget import get_hand_model
from exocap.se3 import Pose


def fixture(name: str) -> str:
    return os.path.join(SIM_FIXTURES_DIR, name)



def step(x: float, hand) -> ActionStep:
    return ActionStep(Pose.from_translation([x, 0.0, 0.5]), np.asarray(hand))


class TestActionChunk(unittest.TestCase):
    def test_valid(self):
        chunk = ActionChunk(0.1, [step(0.0, [0.1]), step(0.01, [0.2])])
        assert len(chunk) == 2
        assert isinstance(chunk.steps, tuple)
        assert abs(chunk.duration - 0.1) < 1e-12

    def test_empty(self):
        self.assertRaises(InvalidChunk, ActionChunk, 0.1, [])

    def test_bad_dt(self):
        for dt in (0.0, -0.1, float("nan")):
            self.assertRaises(InvalidChunk, ActionChunk, dt, [step(0.0, [0.1])])

    def test_inconsistent_hand_width(self):
        steps = [step(0.0, [0.1]), step(0.0, [0.1, 0.2])]
        self.assertRaises(InvalidChunk, ActionChunk, 0.1, steps)

    def test_hand_outside_model_limits(self):
        gripper = get_hand_model("gripper1")
        ActionChunk(0.1, [step(0.0, [1.0])], model=gripper)
        with self.assertRaises(InvalidChunk):
            ActionChunk(0.1, [step(0.0, [1.5])], model=gripper)


class TestSafetyEnvelope(unittest.TestCase):
    def test_read(self):
        envelope = read_envelope(fixture("envelope.txt"))
        assert list(envelope.workspace_min) == [-1.0, -1.0, 0.0]
        assert list(envelope.workspace_max) == [1.0, 1.0, 1.5]
        assert envelope.max_speed == 1.0
        assert envelope.max_joint_delta == 0.2
        assert envelope.contains(np.array([0.0, 0.0, 1.5]))
        assert not envelope.contains(np.array([0.0, 0.0, -0.01]))

    def test_invalid(self):
        lo, hi = [0.0, 0.0, 0.0], [1.0, 1.0, 1.0]
        self.assertRaises(InvalidEnvelope, SafetyEnvelope, hi, lo, 1.0, 0.1)
        self.assertRaises(InvalidEnvelope, SafetyEnvelope, lo[:2], hi, 1.0, 0.1)
        self.assertRaises(InvalidEnvelope, SafetyEnvelope, lo, hi, 0.0, 0.1)
        self.assertRaises(InvalidEnvelope, SafetyEnvelope, lo, hi, 1.0, -1.0)
