from __future__ import annotations

import dataclasses
import logging
import os

import pandas as pd

from exocap.exceptions import BaseError

from ._manifest import MANIFEST_NAME, EpisodeMeta, read_manifest
from ._reader import validate_episode

logger = logging.getLogger(__name__)

INDEX_COLUMNS = [
    "path",
    "task_name",
    "operator_id",
    "phase",
    "method",
    "success",
    "duration",
    "tick_rate",
    "record_count",
    "checksum_ok",
]


@dataclasses.dataclass(frozen=True)
class IndexEntry:
    path: str
    meta: EpisodeMeta
    record_count: int
    checksum_ok: bool | None


class DatasetIndex:
    """Episodes of a dataset directory.

    Parameters
    ----------
    entries : list of IndexEntry
        Episode paths must be unique.
    """

    def __init__(self, entries: list[IndexEntry]):
        paths = [e.path for e in entries]
        if len(set(paths)) != len(paths):
            raise ValueError("Dataset index paths must be unique.")
        self.entries = list(entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def scan(
        cls, root: str | os.PathLike, verify: bool = False
    ) -> DatasetIndex:
        """Indexes every finalized episode directly under ``root``.

        Parameters
        ----------
        root : str or PathLike

        verify : bool, default=False
            If True, every episode is fully validated and its record count
            is taken from the chunks; otherwise the manifest is trusted and
            ``checksum_ok`` is None.
        """
        root = os.fspath(root)
        entries = []
        for name in sorted(os.listdir(root)):
            path = os.path.join(root, name)
            if not os.path.isfile(os.path.join(path, MANIFEST_NAME)):
                continue
            try:
                meta = read_manifest(path)
            except BaseError as exc:
                logger.warning("Skipping %s: %s", path, exc)
                continue
            if not meta.finalized:
                logger.warning("Skipping unfinalized episode %s.", path)
                continue
            record_count, checksum_ok = meta.record_count, None
            if verify:
                report = validate_episode(path)
                checksum_ok = report.ok
                record_count = report.record_count if report.ok else 0
            entries.append(IndexEntry(path, meta, record_count, checksum_ok))
        return cls(entries)

    def frame(self) -> pd.DataFrame:
        """Index as a DataFrame, one row per episode."""
        rows = [
            {
                "path": e.path,
                "task_name": e.meta.task_name,
                "operator_id": e.meta.operator_id,
                "phase": e.meta.phase,
                "method": e.meta.method,
                "success": e.meta.success,
                "duration": e.meta.duration,
                "tick_rate": e.meta.tick_rate,
                "record_count": e.record_count,
                "checksum_ok": e.checksum_ok,
            }
            for e in self.entries
        ]
        return pd.DataFrame(rows, columns=INDEX_COLUMNS)

    def task_names(self) -> list[str]:
        return sorted({e.meta.task_name for e in self.entries})
