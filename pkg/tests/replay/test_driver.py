import unittest

import numpy as np

from exocap.exceptions import SafetyAbort, SeamViolation
from exocap.replay import (
    JOINT_DELTA,
    SPEED,
    WORKSPACE,
    ActionChunk,
    ActionStep,
    RecordingSink,
    SafetyEnvelope,
    continuity_check,
    stream_chunk,
)
from exocap.se3 import Pose, random_pose

ENVELOPE = SafetyEnvelope([-1.0, -1.0, 0.0], [1.0, 1.0, 1.5], 1.0, 0.2)


def line_chunk(n_steps: int, dx: float, dt: float = 0.1, dh: float = 0.0):
    steps = [
        ActionStep(
            Pose.from_translation([k * dx, 0.0, 0.5]), np.array([k * dh, 0.0])
        )
        for k in range(n_steps)
    ]
    return ActionChunk(dt, steps)


class RejectingSink(RecordingSink):
    def send(self, tick_time, pose, hand):
        super().send(tick_time, pose, hand)
        return False


class TestStreamChunk(unittest.TestCase):
    def test_chunk_rate_emits_steps_unchanged(self):
        chunk = line_chunk(5, 0.05)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink, start_time=2.0)
        assert report.ok
        assert report.emitted_steps == report.emitted_samples == 5
        for (t, pose, hand), (k, expected) in zip(
            sink.calls, enumerate(chunk.steps)
        ):
            assert abs(t - (2.0 + k * 0.1)) < 1e-12
            assert pose is expected.pose
            assert hand is expected.hand

    def test_integer_multiple_rate(self):
        chunk = line_chunk(4, 0.05)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink, output_rate=30.0)
        assert report.emitted_samples == 3 * 3 + 1
        assert report.emitted_steps == 4
        xs = [pose.translation[0] for pose in sink.poses]
        np.testing.assert_allclose(xs, np.arange(10) * 0.05 / 3, atol=1e-12)
        assert sink.poses[3] is chunk.steps[1].pose
        assert sink.poses[-1] is chunk.steps[-1].pose

    def test_fractional_rate_ends_on_last_step(self):
        chunk = line_chunk(4, 0.05)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink, output_rate=25.0)
        assert report.ok
        times = [t for t, _, _ in sink.calls]
        assert np.all(np.diff(times) > 0)
        assert abs(times[-1] - 0.3) < 1e-12
        assert sink.poses[-1] is chunk.steps[-1].pose

    def test_lead_in_segment_is_interpolated(self):
        chunk = line_chunk(3, 0.05)
        lead_in = ActionStep(
            Pose.from_translation([-0.05, 0.0, 0.5]), np.zeros(2)
        )
        sink = RecordingSink()
        report = stream_chunk(
            chunk, ENVELOPE, sink, output_rate=20.0, lead_in=lead_in
        )
        assert report.ok
        assert report.emitted_steps == 3
        # One sample between lead-in and step 0, then the chunk itself.
        assert report.emitted_samples == len(sink) == 1 + 2 * 2 + 1
        times = [t for t, _, _ in sink.calls]
        np.testing.assert_allclose(times, np.arange(-1, 5) * 0.05)
        assert abs(sink.poses[0].translation[0] + 0.025) < 1e-12
        assert sink.poses[1] is chunk.steps[0].pose

    def test_lead_in_segment_violation_emits_nothing(self):
        lead_in = ActionStep(
            Pose.from_translation([-0.5, 0.0, 0.5]), np.zeros(2)
        )
        sink = RecordingSink()
        report = stream_chunk(
            line_chunk(3, 0.05),
            ENVELOPE,
            sink,
            output_rate=20.0,
            lead_in=lead_in,
        )
        assert report.abort.reason == SPEED
        assert report.abort.step == report.emitted_steps == 0
        assert len(sink) == 0

    def test_rate_below_chunk_rate(self):
        self.assertRaises(
            ValueError,
            stream_chunk,
            line_chunk(3, 0.0),
            ENVELOPE,
            RecordingSink(),
            5.0,
        )

    def test_workspace_abort(self):
        # Steps 0..2 inside, step 3 at x=1.2 outside.
        chunk = line_chunk(5, 0.4, dt=1.0)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink)
        assert not report.ok
        assert report.abort.reason == WORKSPACE
        assert report.abort.step == 3
        assert report.emitted_steps == 3
        assert len(sink) == 3
        with self.assertRaises(SafetyAbort):
            report.raise_for_abort()

    def test_speed_abort_emits_nothing_of_the_segment(self):
        chunk = line_chunk(4, 0.05)
        steps = list(chunk.steps)
        far = Pose.from_translation([0.5, 0.0, 0.5])
        steps[2] = ActionStep(far, steps[2].hand)
        chunk = ActionChunk(0.1, steps)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink, output_rate=40.0)
        assert report.abort.reason == SPEED
        assert report.abort.step == 2
        assert report.emitted_steps == 2
        # Knots 0 and 1 plus the three samples between them.
        assert report.emitted_samples == len(sink) == 5

    def test_joint_delta_abort(self):
        chunk = line_chunk(3, 0.0, dh=0.3)
        report = stream_chunk(chunk, ENVELOPE, RecordingSink())
        assert report.abort.reason == JOINT_DELTA
        assert report.abort.step == 1
        assert report.emitted_steps == 1

    def test_joint_delta_limit_holds_per_step_at_higher_rates(self):
        chunk = line_chunk(3, 0.0, dh=0.15)
        sink = RecordingSink()
        report = stream_chunk(chunk, ENVELOPE, sink, output_rate=50.0)
        assert report.ok

    def test_rejected_samples_are_counted(self):
        report = stream_chunk(line_chunk(3, 0.0), ENVELOPE, RejectingSink())
        assert report.ok
        assert report.rejected_samples == 3

    def test_pacer_sees_every_time(self):
        seen = []
        stream_chunk(
            line_chunk(3, 0.0), ENVELOPE, RecordingSink(), pacer=seen.append
        )
        np.testing.assert_allclose(seen, [0.0, 0.1, 0.2])


def test_fuzz_no_sample_leaves_the_envelope():
    rs = np.random.RandomState(7)
    for _ in range(1000):
        lo = rs.uniform(-1.0, 0.0, size=3)
        envelope = SafetyEnvelope(
            lo,
            lo + rs.uniform(0.2, 1.5, size=3),
            rs.uniform(0.1, 3.0),
            rs.uniform(0.05, 0.5),
        )
        n_steps = rs.randint(1, 12)
        dt = rs.uniform(0.01, 0.2)
        center = random_pose(rs, translation_scale=0.3)
        steps = []
        for _ in range(n_steps):
            jitter = Pose.from_translation(rs.normal(0.0, 0.05, size=3))
            translation = center.translation + jitter.translation
            steps.append(
                ActionStep(
                    Pose(translation, center.rotation),
                    rs.uniform(0.0, 0.3, size=2),
                )
            )
        chunk = ActionChunk(dt, steps)
        output_rate = rs.choice([None, 2.0 / dt, 3.7 / dt])

        sink = RecordingSink()
        report = stream_chunk(chunk, envelope, sink, output_rate=output_rate)
        assert report.emitted_samples == len(sink)
        if report.abort is not None:
            assert report.abort.step == report.emitted_steps
            assert report.emitted_steps < n_steps
        else:
            assert report.emitted_steps == n_steps

        prev = None
        for t, pose, hand in sink.calls:
            assert envelope.contains(pose.translation)
            if prev is not None:
                elapsed = t - prev[0]
                moved = pose.translation - prev[1].translation
                distance = np.linalg.norm(moved)
                assert distance <= envelope.max_speed * elapsed * (1 + 1e-9)
                delta = np.max(np.abs(hand - prev[2]))
                limit = envelope.max_joint_delta * elapsed / dt
                assert delta <= limit * (1 + 1e-9) + 1e-12
            prev = (t, pose, hand)


class TestContinuityCheck(unittest.TestCase):
    def test_smooth_seam(self):
        continuity_check(line_chunk(3, 0.05), line_chunk(3, 0.05), ENVELOPE)

    def test_position_jump(self):
        prev = line_chunk(3, 0.04)
        nxt = line_chunk(3, -0.05)
        continuity_check(prev, nxt, ENVELOPE)
        far = line_chunk(11, 0.05)
        with self.assertRaises(SeamViolation) as ctx:
            continuity_check(far, nxt, ENVELOPE)
        assert ctx.exception.reason == SPEED

    def test_joint_jump(self):
        prev = line_chunk(3, 0.0, dh=0.15)
        with self.assertRaises(SeamViolation) as ctx:
            continuity_check(prev, line_chunk(3, 0.0), ENVELOPE)
        assert ctx.exception.reason == JOINT_DELTA
