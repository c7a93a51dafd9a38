import os
import unittest

import numpy as np
from numpy.testing import assert_allclose

from exocap.definitions import SIM_FIXTURES_DIR
from exocap.exceptions import InvalidScenario, ParseError
from exocap.se3 import Pose
from exocap.sim import (
    CAMERAS,
    FrameStall,
    GloveChannel,
    PipelineConfig,
    SimScenario,
    load_pipeline_config,
    load_scenario,
    read_pipeline_config,
    read_scenario,
)


def fixture(name: str) -> str:
    return os.path.join(SIM_FIXTURES_DIR, name)



class TestSimScenario(unittest.TestCase):
    def test_read_fixture(self):
        scenario = read_scenario(fixture("scenario.txt"))
        assert scenario.duration == 3.0
        assert scenario.seed == 7
        assert scenario.n_channels == 6
        assert scenario.glove[1] == GloveChannel(1.0, 0.5, 0.5)
        assert scenario.frame_size == (8, 6)
        assert scenario.cameras == CAMERAS
        assert scenario.stalls == ()

    def test_stall_fixture(self):
        scenario = read_scenario(fixture("stall.txt"))
        assert scenario.stalls == (FrameStall("cam_wrist", 1.0, 1.5),)
        assert scenario.stalled("cam_wrist", 1.0)
        assert scenario.stalled("cam_wrist", 1.49)
        assert not scenario.stalled("cam_wrist", 1.5)
        assert not scenario.stalled("cam_left", 1.2)

    def test_defaults(self):
        scenario = load_scenario("duration: 2.5\n")
        assert scenario == SimScenario(2.5)
        assert scenario.slam_rate == 200.0
        assert scenario.glove_rate == 120.0
        assert scenario.frame_rate == 30.0

    def test_text_round_trip(self):
        scenario = SimScenario(
            1.5,
            seed=2**64 - 1,
            noise_translation=0.001,
            glove=(GloveChannel(0.3, 2.0, 0.1),),
            stalls=(FrameStall("cam_left", 0.2, 0.4),),
        )
        assert load_scenario(scenario.to_text()) == scenario

    def test_slam_path(self):
        scenario = SimScenario(1.0, slam_radius=0.5, slam_center=(1, 2, 3))
        translation, rotation = scenario.slam_path(0.0)
        assert_allclose(translation, [1.5, 2.0, 3.0])
        assert_allclose(rotation, [1.0, 0.0, 0.0, 0.0])
        translation, rotation = scenario.slam_path(np.pi)
        assert_allclose(translation, [0.5, 2.0, 3.0], atol=1e-12)
        assert_allclose(rotation, [0.0, 0.0, 0.0, 1.0], atol=1e-12)

    def test_calibration_frames(self):
        scenario = SimScenario(1.0, glove=(GloveChannel(2.0, 1.0),))
        assert list(scenario.glove_open()) == [-2.0]
        assert list(scenario.glove_closed()) == [2.0]

    def test_invalid(self):
        for kwargs in (
            dict(duration=0.0),
            dict(duration=1.0, seed=-1),
            dict(duration=1.0, seed=2**64),
            dict(duration=1.0, noise_rotation=-0.1),
            dict(duration=1.0, glove=()),
            dict(duration=1.0, glove=(GloveChannel(0.0, 1.0),)),
            dict(duration=1.0, slam_rate=0.0),
            dict(duration=1.0, cameras=("a", "a")),
            dict(duration=1.0, stalls=(FrameStall("nope", 0.0, 1.0),)),
            dict(duration=1.0, stalls=(FrameStall("cam_left", 1.0, 1.0),)),
        ):
            with self.assertRaises(InvalidScenario):
                SimScenario(**kwargs)

    def test_parse_errors(self):
        with self.assertRaises(ParseError) as ctx:
            load_scenario("duration: 1.0\nglove: 1.0\n")
        assert ctx.exception.line == 2
        with self.assertRaises(ParseError) as ctx:
            load_scenario("duration: 1.0\nstall: cam_left soon 2\n")
        assert ctx.exception.line == 2
        self.assertRaises(ParseError, load_scenario, "seed: 1\n")


class TestPipelineConfig(unittest.TestCase):
    def test_read_fixture(self):
        config = read_pipeline_config(fixture("pipeline.txt"))
        assert config.scenario == fixture("scenario.txt")
        assert config.hand_model == "inspire6"
        assert config.assignment == (0, 1, 2, 3, 4, 5)
        assert config.calibration.equals(Pose.from_translation([0, 0, 0.1]))
        assert config.tick_rate == 30.0
        assert config.task_name == "pick-place"
        assert config.success

    def test_default_assignment(self):
        assignment = PipelineConfig().resolve_assignment(8, 3)
        assert assignment == [0, 1, 2, 0, 1, 2, 0, 1]
        assert PipelineConfig(assignment=[5]).resolve_assignment(1, 6) == [5]

    def test_invalid(self):
        self.assertRaises(ValueError, PipelineConfig, tick_rate=0.0)
        self.assertRaises(ValueError, PipelineConfig, phase="training")
        self.assertRaises(ValueError, PipelineConfig, method="puppet")
        with self.assertRaises(ParseError) as ctx:
            load_pipeline_config("phase: training\n")
        assert ctx.exception.line == 0
        with self.assertRaises(ParseError) as ctx:
            load_pipeline_config("calibration: 0 0 0 1 0 0\n")
        assert ctx.exception.line == 1
