from __future__ import annotations

import dataclasses
import logging
import os
from typing import Iterator

from exocap.exceptions import (
    BaseError,
    FormatVersionUnsupported,
    IoError,
    SizeMismatch,
    TickOrderError,
)
from exocap.stream import SyncedFrame

from ._format import (
    TICK,
    TICK_KIND,
    TICKS_CHUNK,
    ChunkReader,
    chunk_filename,
    decode_payload,
)
from ._manifest import MANIFEST_NAME, EpisodeMeta, read_manifest

logger = logging.getLogger(__name__)


def _open_chunks(path: str, meta: EpisodeMeta) -> tuple[ChunkReader, dict]:
    ticks = ChunkReader(os.path.join(path, TICKS_CHUNK))
    if ticks.kind != TICK_KIND:
        raise FormatVersionUnsupported(
            chunk=TICKS_CHUNK, reason=f"unexpected stream kind {ticks.kind}"
        )
    chunks = {}
    for desc in meta.roster:
        chunk = ChunkReader(os.path.join(path, chunk_filename(desc.stream_id)))
        if chunk.kind != desc.kind:
            raise FormatVersionUnsupported(
                chunk=chunk.name,
                reason=f"stream kind {chunk.kind} does not match manifest"
                f" kind {int(desc.kind)}",
            )
        chunks[desc.stream_id] = chunk
    return ticks, chunks


def _iter_records(
    meta: EpisodeMeta, ticks: ChunkReader, chunks: dict[str, ChunkReader]
) -> Iterator[SyncedFrame]:
    stream_iters = {k: chunk.records() for k, chunk in chunks.items()}
    last_tick = None
    for tick_time, tick_payload in ticks.records():
        if len(tick_payload) != TICK.size:
            raise SizeMismatch(
                stream_id="_ticks", got=len(tick_payload), expected=TICK.size
            )
        (tick_index,) = TICK.unpack(tick_payload)
        if last_tick is not None and tick_index <= last_tick:
            raise TickOrderError(tick_index=tick_index, last=last_tick)
        last_tick = tick_index

        entries = {}
        for desc in meta.roster:
            try:
                timestamp, payload = next(stream_iters[desc.stream_id])
            except StopIteration:
                raise FormatVersionUnsupported(
                    chunk=chunks[desc.stream_id].name,
                    reason=f"ends before tick {tick_index}",
                ) from None
            if timestamp != tick_time:
                raise FormatVersionUnsupported(
                    chunk=chunks[desc.stream_id].name,
                    reason=f"timestamp {timestamp} does not match tick time"
                    f" {tick_time}",
                )
            entries[desc.stream_id] = decode_payload(desc, payload)
        yield SyncedFrame(tick_index, tick_time, entries)

    for stream_id, records in stream_iters.items():
        if next(records, None) is not None:
            raise FormatVersionUnsupported(
                chunk=chunks[stream_id].name,
                reason="has more records than ticks",
            )


def load_episode(
    path: str | os.PathLike,
) -> tuple[EpisodeMeta, Iterator[SyncedFrame]]:
    """Opens an episode for reading.

    Every chunk checksum is verified before this returns; records are then
    decoded lazily in tick order.

    Parameters
    ----------
    path : str or PathLike
        Episode directory.

    Returns
    -------
    meta : EpisodeMeta

    records : iterator of SyncedFrame

    Raises
    ------
    IoError, ChecksumMismatch, ParseError
    FormatVersionUnsupported
        Also raised for an episode that was never finalized.
    """
    path = os.fspath(path)
    if not os.path.isdir(path):
        raise IoError(path=path, reason="not an episode directory")
    meta = read_manifest(path)
    if not meta.finalized:
        raise FormatVersionUnsupported(
            chunk=MANIFEST_NAME, reason="episode was never finalized"
        )
    ticks, chunks = _open_chunks(path, meta)
    return meta, _iter_records(meta, ticks, chunks)


@dataclasses.dataclass
class ValidationReport:
    """Outcome of :func:`validate_episode`."""

    path: str
    ok: bool
    record_count: int = 0
    error: BaseError | None = None

    @property
    def category(self) -> str:
        return self.error.category if self.error else "OK"


def validate_episode(path: str | os.PathLike) -> ValidationReport:
    """Checksum and invariant audit of an episode directory.

    Verifies every chunk CRC32, decodes every record (tick order, payload
    sizes, timestamp agreement across chunks) and checks the record count
    against the manifest.

    Returns
    -------
    ValidationReport
    """
    path = os.fspath(path)
    try:
        meta, records = load_episode(path)
        n_records = sum(1 for _ in records)
        if n_records != meta.record_count:
            raise SizeMismatch(
                stream_id="manifest.record_count",
                got=n_records,
                expected=meta.record_count,
            )
    except BaseError as exc:
        logger.warning("Episode %s failed validation: %s", path, exc)
        return ValidationReport(path=path, ok=False, error=exc)
    return ValidationReport(path=path, ok=True, record_count=n_records)
