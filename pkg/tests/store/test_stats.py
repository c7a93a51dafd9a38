import dataclasses
import tempfile
import unittest

from exocap.exceptions import NoSuchTask
from exocap.sim import (
    DEPLOYMENT_TASKS,
    REFERENCE_TASKS,
    SyntheticTask,
    make_synthetic_dataset,
)
from exocap.store import DatasetIndex, compare_methods, stats_table, task_stats

EXPECTED = {
    "pick-place": "4.8 ± 0.9  29/30",
    "sort six bottles": "41.8 ± 7.8  27/30",
    "hammer": "12.4 ± 3.3  28/30",
    "wipe whiteboard": "12.9 ± 2.1  27/30",
}


class TestTaskStats(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls._tmp = tempfile.TemporaryDirectory()
        tasks = REFERENCE_TASKS + DEPLOYMENT_TASKS
        make_synthetic_dataset(cls._tmp.name, tasks, random_state=0)
        cls.index = DatasetIndex.scan(cls._tmp.name)

    @classmethod
    def tearDownClass(cls):
        cls._tmp.cleanup()

    def test_reference_statistics(self):
        for task in REFERENCE_TASKS:
            stats = task_stats(self.index, task.task_name, "collection")
            assert abs(stats.mean_duration - task.mean_duration) <= 0.05
            assert abs(stats.std_duration - task.std_duration) <= 0.05
            assert stats.successes == task.successes
            assert stats.trials == 30
            assert stats.success_rate == task.successes / 30
            assert stats.format() == EXPECTED[task.task_name]

    def test_deployment_phase(self):
        stats = task_stats(self.index, "hammer", "deployment")
        assert (stats.successes, stats.trials) == (25, 30)
        both = task_stats(self.index, "hammer")
        assert (both.successes, both.trials) == (53, 60)

    def test_stats_table(self):
        table = stats_table(self.index, "collection")
        assert sorted(table["task_name"]) == sorted(EXPECTED)
        assert list(table["trials"]) == [30] * 4

    def test_no_such_task(self):
        with self.assertRaises(NoSuchTask) as ctx:
            task_stats(self.index, "juggle")
        assert ctx.exception.category == "NoSuchTask"

    def test_index_frame(self):
        frame = self.index.frame()
        assert len(frame) == len(self.index) == 240
        assert frame["checksum_ok"].isna().all()
        assert set(frame["phase"]) == {"collection", "deployment"}


class TestCompareMethods(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self._tmp.cleanup()

    def test_durations_per_method(self):
        exo = SyntheticTask("hammer", 12.0, 2.0, 10, trials=10)
        human = dataclasses.replace(exo, mean_duration=6.0, method="human")
        tele = dataclasses.replace(
            exo, mean_duration=30.0, method="teleoperation"
        )
        make_synthetic_dataset(self._tmp.name, [exo, human, tele], 3)
        table = compare_methods(DatasetIndex.scan(self._tmp.name), "hammer")

        assert sorted(table.index) == ["exoskeleton", "human", "teleoperation"]
        assert abs(table.loc["human", "mean"] - 6.0) <= 0.05
        assert abs(table.loc["teleoperation", "mean"] - 30.0) <= 0.05
        assert list(table["trials"]) == [10, 10, 10]

    def test_verified_scan(self):
        task = SyntheticTask("wipe", 2.0, 0.5, 3, trials=4)
        paths = make_synthetic_dataset(self._tmp.name, [task], 1)
        index = DatasetIndex.scan(self._tmp.name, verify=True)
        assert len(index) == len(paths) == 4
        assert all(entry.checksum_ok for entry in index)
        for entry in index:
            assert entry.record_count == entry.meta.record_count
