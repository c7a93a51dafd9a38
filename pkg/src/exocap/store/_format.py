"""Binary chunk codec.

One chunk file per stream, all integers little-endian::

    header   magic "EXVH" | u16 version | u8 stream kind
    record*  u64 timestamp_ns | u32 payload_len | payload
    footer   u32 CRC32 of every record byte (the body)

A ``payload_len`` of 0 marks a gap. Payloads:

    pose     7 x f64  tx ty tz qw qx qy qz
    joints   width x f64
    frame    u16 encoding | u32 width | u32 height | raw bytes
    tick     u64 tick_index
"""

from __future__ import annotations

import os
import struct
import zlib
from typing import Iterator

import numpy as np

from exocap.exceptions import (
    ChecksumMismatch,
    FormatVersionUnsupported,
    IoError,
    KindMismatch,
    SizeMismatch,
)
from exocap.se3 import POSE_NBYTES, Pose
from exocap.stream import (
    GAP,
    FramePayload,
    StreamDescriptor,
    StreamKind,
    is_gap,
)

MAGIC = b"EXVH"
FORMAT_VERSION = 1
TICK_KIND = 3

HEADER = struct.Struct("<4sHB")
RECORD_HEADER = struct.Struct("<QI")
FOOTER = struct.Struct("<I")
FRAME_HEADER = struct.Struct("<HII")
TICK = struct.Struct("<Q")

JOINT_DTYPE = np.dtype("<f8")
CHUNK_SUFFIX = ".chunk"
TICKS_CHUNK = "_ticks" + CHUNK_SUFFIX


def _io_error(path: str, exc: OSError) -> IoError:
    return IoError(path=path, reason=exc.strerror or str(exc))


def chunk_filename(stream_id: str) -> str:
    return stream_id + CHUNK_SUFFIX


def encode_payload(desc: StreamDescriptor, value) -> bytes:
    """Serializes a synced-frame entry for ``desc``'s stream.

    Raises
    ------
    KindMismatch if the value does not match the stream kind.
    SizeMismatch if a joints vector has the wrong length.
    """
    if is_gap(value):
        return b""
    if desc.kind == StreamKind.POSE:
        if not isinstance(value, Pose):
            raise KindMismatch(
                stream_id=desc.stream_id,
                expected="pose",
                got=type(value).__name__,
            )
        return value.to_bytes()
    if desc.kind == StreamKind.JOINTS:
        if not isinstance(value, np.ndarray):
            raise KindMismatch(
                stream_id=desc.stream_id,
                expected="joints",
                got=type(value).__name__,
            )
        if value.shape != (desc.width,):
            raise SizeMismatch(
                stream_id=desc.stream_id,
                got=value.shape[0] if value.ndim else 0,
                expected=desc.width,
            )
        return value.astype(JOINT_DTYPE).tobytes()
    if not isinstance(value, FramePayload):
        raise KindMismatch(
            stream_id=desc.stream_id, expected="frame", got=type(value).__name__
        )
    header = FRAME_HEADER.pack(value.encoding, value.width, value.height)
    return header + value.data


def decode_payload(desc: StreamDescriptor, data: bytes):
    """Inverse of :func:`encode_payload`.

    Raises
    ------
    SizeMismatch if the payload size does not fit the stream.
    """
    if not data:
        return GAP
    if desc.kind == StreamKind.POSE:
        if len(data) != POSE_NBYTES:
            raise SizeMismatch(
                stream_id=desc.stream_id, got=len(data), expected=POSE_NBYTES
            )
        return Pose.from_bytes(data)
    if desc.kind == StreamKind.JOINTS:
        expected = desc.width * JOINT_DTYPE.itemsize
        if len(data) != expected:
            raise SizeMismatch(
                stream_id=desc.stream_id, got=len(data), expected=expected
            )
        value = np.frombuffer(data, dtype=JOINT_DTYPE).astype(np.float64)
        value.setflags(write=False)
        return value
    if len(data) < FRAME_HEADER.size:
        raise SizeMismatch(
            stream_id=desc.stream_id, got=len(data), expected=FRAME_HEADER.size
        )
    encoding, width, height = FRAME_HEADER.unpack_from(data)
    try:
        return FramePayload(
            data[FRAME_HEADER.size :],
            encoding=encoding,
            width=width,
            height=height,
        )
    except ValueError as exc:
        raise SizeMismatch(
            stream_id=desc.stream_id, got=len(data), expected=str(exc)
        ) from exc


class ChunkWriter:
    """Appends records to a chunk file and seals it with a CRC32 footer."""

    def __init__(self, path: str | os.PathLike, kind: int):
        self.path = os.fspath(path)
        self.kind = int(kind)
        self.n_records = 0
        self._crc = 0
        try:
            self._file = open(self.path, "wb")
        except OSError as exc:
            raise _io_error(self.path, exc) from exc
        try:
            self._file.write(HEADER.pack(MAGIC, FORMAT_VERSION, self.kind))
        except OSError as exc:
            self._file.close()
            raise _io_error(self.path, exc) from exc

    @property
    def closed(self) -> bool:
        return self._file.closed

    def write(self, timestamp: int, payload: bytes) -> None:
        record = RECORD_HEADER.pack(timestamp, len(payload)) + payload
        self._crc = zlib.crc32(record, self._crc)
        try:
            self._file.write(record)
        except OSError as exc:
            raise _io_error(self.path, exc) from exc
        self.n_records += 1

    def close(self) -> None:
        if self._file.closed:
            return
        try:
            self._file.write(FOOTER.pack(self._crc & 0xFFFFFFFF))
            self._file.close()
        except OSError as exc:
            raise _io_error(self.path, exc) from exc

    def abort(self) -> None:
        """Closes the file without a footer; readers reject it."""
        if not self._file.closed:
            self._file.close()


class ChunkReader:
    """Verified view of a sealed chunk file.

    The whole file is checked on construction (magic, version, CRC32), so
    corrupt chunks fail before any record is yielded.

    Parameters
    ----------
    path : str or PathLike
    """

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self.name = os.path.basename(self.path)
        try:
            with open(self.path, "rb") as f:
                data = f.read()
        except OSError as exc:
            raise _io_error(self.path, exc) from exc

        if len(data) < HEADER.size + FOOTER.size:
            raise FormatVersionUnsupported(
                chunk=self.name, reason="truncated file"
            )
        magic, version, kind = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatVersionUnsupported(
                chunk=self.name, reason=f"unknown magic {magic!r}"
            )
        if version != FORMAT_VERSION:
            raise FormatVersionUnsupported(
                chunk=self.name, reason=f"unknown version {version}"
            )

        body = data[HEADER.size : -FOOTER.size]
        (stored,) = FOOTER.unpack_from(data, len(data) - FOOTER.size)
        computed = zlib.crc32(body) & 0xFFFFFFFF
        if stored != computed:
            raise ChecksumMismatch(
                chunk=self.name,
                offset=HEADER.size,
                stored=stored,
                computed=computed,
            )
        self.kind = kind
        self._body = body

    def records(self) -> Iterator[tuple[int, bytes]]:
        """Yields ``(timestamp_ns, payload)`` in file order."""
        body = self._body
        offset = 0
        while offset < len(body):
            if offset + RECORD_HEADER.size > len(body):
                raise FormatVersionUnsupported(
                    chunk=self.name,
                    reason=f"truncated record header at body offset {offset}",
                )
            timestamp, length = RECORD_HEADER.unpack_from(body, offset)
            start = offset + RECORD_HEADER.size
            end = start + length
            if end > len(body):
                raise FormatVersionUnsupported(
                    chunk=self.name,
                    reason=f"record at body offset {offset} overruns the body",
                )
            yield timestamp, body[start:end]
            offset = end

    def count(self) -> int:
        return sum(1 for _ in self.records())
