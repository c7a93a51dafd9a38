import os
import tempfile
import unittest

import numpy as np

from exocap.definitions import SIM_FIXTURES_DIR
from exocap.replay import RecordingSink, ReplayPolicy, read_envelope, run_policy
from exocap.retarget import get_hand_model
from exocap.sim import (
    CAMERAS,
    HAND_STREAM,
    POSE_STREAM,
    FrameStall,
    PipelineConfig,
    SimScenario,
    build_producers,
    read_pipeline_config,
    read_scenario,
    run_scenario,
)
from exocap.store import MANIFEST_NAME, load_episode, validate_episode
from exocap.stream import NS_PER_S, is_gap


def fixture(name: str) -> str:
    return os.path.join(SIM_FIXTURES_DIR, name)



def chunk_bytes(episode_dir: str) -> dict[str, bytes]:
    contents = {}
    for name in sorted(os.listdir(episode_dir)):
        if name == MANIFEST_NAME:
            continue
        with open(os.path.join(episode_dir, name), "rb") as f:
            contents[name] = f.read()
    return contents


class TestBuildProducers(unittest.TestCase):
    def test_roster(self):
        producers = build_producers(SimScenario(1.0), PipelineConfig())
        ids = [p.descriptor.stream_id for p in producers]
        assert ids == [POSE_STREAM, HAND_STREAM, *CAMERAS]
        assert producers[1].descriptor.width == 6

    def test_hand_model_width(self):
        config = PipelineConfig(hand_model="hand16")
        producers = build_producers(SimScenario(1.0), config)
        assert producers[1].descriptor.width == 16


class TestRunScenario(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.root = self._tmp.name
        self.scenario = read_scenario(fixture("scenario.txt"))

    def tearDown(self):
        self._tmp.cleanup()

    def test_noise_free_session_has_no_gaps(self):
        path = run_scenario(self.scenario, out=self.root, name="clean")
        assert validate_episode(path).ok
        meta, records = load_episode(path)
        records = list(records)
        assert meta.record_count == len(records) == 90
        assert meta.hand_model == "inspire6"
        assert [r.tick_index for r in records] == list(range(90))
        assert not any(r.has_gaps() for r in records)

    def test_runs_are_byte_identical(self):
        first = run_scenario(self.scenario, out=self.root, name="a")
        second = run_scenario(self.scenario, out=self.root, name="b")
        assert chunk_bytes(first) == chunk_bytes(second)

    def test_concurrent_matches_sequential(self):
        for seed in range(20):
            scenario = SimScenario(
                1.0,
                seed=seed,
                noise_translation=0.001,
                noise_rotation=0.005,
                frame_size=(4, 2),
            )
            sequential = run_scenario(
                scenario, out=self.root, name=f"seq{seed}"
            )
            concurrent = run_scenario(
                scenario, out=self.root, name=f"par{seed}", concurrent=True
            )
            assert chunk_bytes(sequential) == chunk_bytes(concurrent)

    def test_stalled_camera_leaves_gaps(self):
        scenario = read_scenario(fixture("stall.txt"))
        path = run_scenario(scenario, out=self.root)
        _, records = load_episode(path)
        for record in records:
            t = record.tick_time / NS_PER_S
            expected = ["cam_wrist"] if 1.0 <= t < 1.5 else []
            assert record.gaps() == expected, record.tick_index

    def test_small_windows_record_the_same_episode(self):
        a = run_scenario(self.scenario, out=self.root, name="w30")
        config = PipelineConfig(window=7)
        b = run_scenario(self.scenario, config, out=self.root, name="w7")
        assert chunk_bytes(a) == chunk_bytes(b)

    def test_replay_reproduces_recorded_actions(self):
        config = read_pipeline_config(fixture("pipeline.txt"))
        scenario = read_scenario(config.scenario)
        path = run_scenario(scenario, config, out=self.root, name="e2e")

        meta, records = load_episode(path)
        records = list(records)
        assert meta.task_name == "pick-place"
        model = get_hand_model(meta.hand_model)
        policy = ReplayPolicy(
            records,
            dt=1.0 / meta.tick_rate,
            chunk_len=config.chunk_len,
            model=model,
        )
        envelope = read_envelope(fixture("envelope.txt"))
        sink = RecordingSink()
        report = run_policy(policy, envelope, sink)

        assert report.ok
        assert report.emitted_steps == len(sink) == 90
        for record, pose, hand in zip(records, sink.poses, sink.hands):
            assert pose.equals(record.entries[POSE_STREAM])
            assert np.array_equal(hand, record.entries[HAND_STREAM])
            assert model.contains(hand)
        # Calibration lifts every pose by 10 cm.
        heights = [pose.translation[2] for pose in sink.poses]
        np.testing.assert_allclose(heights, 0.6)

    def test_gaps_are_stored_as_gaps(self):
        stall = FrameStall("cam_left", 0.0, 0.2)
        scenario = SimScenario(1.0, frame_size=(4, 2), stalls=(stall,))
        path = run_scenario(scenario, out=self.root)
        _, records = load_episode(path)
        first = next(records)
        assert is_gap(first.entries["cam_left"])
        assert not is_gap(first.entries["cam_right"])
