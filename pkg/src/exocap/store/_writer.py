from __future__ import annotations

import dataclasses
import datetime as dt
import logging
import os

from exocap.exceptions import (
    InvalidRoster,
    IoError,
    SizeMismatch,
    TickOrderError,
    WriterClosed,
)
from exocap.stream import SyncedFrame, StreamKind

from ._format import (
    TICK,
    TICK_KIND,
    TICKS_CHUNK,
    ChunkWriter,
    chunk_filename,
    encode_payload,
)
from ._manifest import EpisodeMeta, write_manifest

logger = logging.getLogger(__name__)

_RESERVED_IDS = ("_ticks", "manifest")


def _check_roster(meta: EpisodeMeta) -> None:
    if not meta.roster:
        raise InvalidRoster(reason="roster is empty")
    seen = set()
    for desc in meta.roster:
        if desc.stream_id in seen:
            raise InvalidRoster(
                reason=f"duplicate stream id '{desc.stream_id}'"
            )
        if desc.stream_id in _RESERVED_IDS or os.sep in desc.stream_id:
            raise InvalidRoster(reason=f"reserved stream id '{desc.stream_id}'")
        if desc.kind == StreamKind.JOINTS and desc.width < 1:
            raise InvalidRoster(
                reason=f"joints stream '{desc.stream_id}' has no width"
            )
        seen.add(desc.stream_id)


def _next_episode_name(root: str) -> str:
    existing = set(os.listdir(root))
    i = 0
    while f"episode_{i:06d}" in existing:
        i += 1
    return f"episode_{i:06d}"


def _make_episode_dir(root: str, name: str | None) -> str:
    os.makedirs(root, exist_ok=True)
    if name is not None:
        path = os.path.join(root, name)
        os.mkdir(path)
        return path
    # Another writer may claim the same name between listing and mkdir.
    while True:
        path = os.path.join(root, _next_episode_name(root))
        try:
            os.mkdir(path)
            return path
        except FileExistsError:
            continue


class EpisodeWriter:
    """Writes one episode directory.

    Use :func:`begin_episode` to create one. One writer per episode;
    different episodes may be written concurrently.

    Parameters
    ----------
    path : str
        Episode directory (already created).

    meta : EpisodeMeta
    """

    def __init__(self, path: str, meta: EpisodeMeta):
        self.path = path
        self.meta = meta
        self.n_records = 0
        self.last_tick: int | None = None
        self._closed = False
        self._ticks = ChunkWriter(os.path.join(path, TICKS_CHUNK), TICK_KIND)
        self._chunks: dict[str, ChunkWriter] = {}
        try:
            for desc in meta.roster:
                self._chunks[desc.stream_id] = ChunkWriter(
                    os.path.join(path, chunk_filename(desc.stream_id)),
                    desc.kind,
                )
        except BaseException:
            self._ticks.abort()
            for chunk in self._chunks.values():
                chunk.abort()
            raise

    @property
    def closed(self) -> bool:
        return self._closed

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._closed:
            return
        if exc_type is None:
            self.finalize()
        else:
            self.abort()

    def abort(self) -> None:
        """Closes every chunk and leaves the episode unfinalized."""
        self._closed = True
        self._ticks.abort()
        for chunk in self._chunks.values():
            chunk.abort()
        logger.warning(
            "Aborted episode %s after %d records.", self.path, self.n_records
        )

    def append(self, record: SyncedFrame) -> None:
        """Serializes a record into the per-stream chunk files.

        Raises
        ------
        WriterClosed, TickOrderError, SizeMismatch, KindMismatch
        """
        if self._closed:
            raise WriterClosed(path=self.path)
        if self.last_tick is not None and record.tick_index <= self.last_tick:
            raise TickOrderError(
                tick_index=record.tick_index, last=self.last_tick
            )
        if len(record.entries) != len(self.meta.roster) or any(
            desc.stream_id not in record.entries for desc in self.meta.roster
        ):
            raise SizeMismatch(
                stream_id="*",
                got=sorted(record.entries),
                expected=[d.stream_id for d in self.meta.roster],
            )

        # Encode everything before writing so a bad entry leaves no partial
        # record behind.
        payloads = {
            desc.stream_id: encode_payload(desc, record.entries[desc.stream_id])
            for desc in self.meta.roster
        }
        self._ticks.write(record.tick_time, TICK.pack(record.tick_index))
        for stream_id, payload in payloads.items():
            self._chunks[stream_id].write(record.tick_time, payload)

        self.last_tick = record.tick_index
        self.n_records += 1

    def finalize(self) -> EpisodeMeta:
        """Seals every chunk and completes the manifest.

        Returns
        -------
        meta : EpisodeMeta
            Completed metadata.

        Raises
        ------
        WriterClosed if already finalized.
        """
        if self._closed:
            raise WriterClosed(path=self.path)
        self._closed = True
        self._ticks.close()
        for chunk in self._chunks.values():
            chunk.close()

        duration = 0.0
        if self.n_records:
            duration = (self.n_records - 1) / self.meta.tick_rate
        self.meta = dataclasses.replace(
            self.meta,
            record_count=self.n_records,
            duration=duration,
            empty=self.n_records == 0,
            finalized=True,
        )
        write_manifest(self.path, self.meta)
        logger.info(
            "Finalized episode %s: %d records, %.3f s.",
            self.path,
            self.n_records,
            duration,
        )
        return self.meta


def begin_episode(
    meta: EpisodeMeta,
    root: str | os.PathLike,
    name: str | None = None,
) -> EpisodeWriter:
    """Creates an episode directory with a manifest stub.

    Parameters
    ----------
    meta : EpisodeMeta

    root : str or PathLike
        Dataset directory; created if missing.

    name : str, default=None
        Episode directory name. Defaults to the next free ``episode_NNNNNN``.

    Returns
    -------
    EpisodeWriter

    Raises
    ------
    InvalidRoster, IoError
    """
    _check_roster(meta)
    if not meta.tick_rate > 0:
        raise InvalidRoster(
            reason=f"tick_rate must be > 0, got {meta.tick_rate}"
        )
    root = os.fspath(root)
    try:
        path = _make_episode_dir(root, name)
    except OSError as exc:
        raise IoError(path=root, reason=exc.strerror or str(exc)) from exc

    if meta.start_time is None:
        meta = dataclasses.replace(
            meta, start_time=dt.datetime.now(dt.timezone.utc)
        )
    meta = dataclasses.replace(
        meta, record_count=0, duration=0.0, empty=True, finalized=False
    )
    write_manifest(path, meta)
    logger.info("Started episode %s (task '%s').", path, meta.task_name)
    return EpisodeWriter(path, meta)


def append(writer: EpisodeWriter, record: SyncedFrame) -> None:
    writer.append(record)


def finalize(writer: EpisodeWriter) -> EpisodeMeta:
    return writer.finalize()
