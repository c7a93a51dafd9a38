"""
The :mod:`exocap.store` module persists synchronized episodes in a
checksummed chunk format and computes dataset statistics.
"""

from ._format import (
    CHUNK_SUFFIX,
    FORMAT_VERSION,
    MAGIC,
    TICKS_CHUNK,
    ChunkReader,
    ChunkWriter,
    chunk_filename,
    decode_payload,
    encode_payload,
)
from ._index import DatasetIndex, IndexEntry
from ._manifest import (
    MANIFEST_NAME,
    METHODS,
    PHASES,
    EpisodeMeta,
    read_manifest,
)
from ._reader import ValidationReport, load_episode, validate_episode
from ._stats import TaskStats, compare_methods, stats_table, task_stats
from ._writer import EpisodeWriter, append, begin_episode, finalize

__all__ = [
    "CHUNK_SUFFIX",
    "ChunkReader",
    "ChunkWriter",
    "DatasetIndex",
    "EpisodeMeta",
    "EpisodeWriter",
    "FORMAT_VERSION",
    "IndexEntry",
    "MAGIC",
    "MANIFEST_NAME",
    "METHODS",
    "PHASES",
    "TICKS_CHUNK",
    "TaskStats",
    "ValidationReport",
    "append",
    "begin_episode",
    "chunk_filename",
    "compare_methods",
    "decode_payload",
    "encode_payload",
    "finalize",
    "load_episode",
    "read_manifest",
    "stats_table",
    "task_stats",
    "validate_episode",
]
