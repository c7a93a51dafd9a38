from __future__ import annotations

import dataclasses
import datetime as dt
import os

from exocap.config import ConfigFile, format_config, parse_config
from exocap.exceptions import FormatVersionUnsupported, IoError, ParseError
from exocap.stream import StreamDescriptor, StreamKind

from ._format import FORMAT_VERSION

MANIFEST_NAME = "manifest.txt"

PHASES = ("collection", "deployment")
METHODS = ("exoskeleton", "human", "teleoperation")


@dataclasses.dataclass(frozen=True)
class EpisodeMeta:
    """Episode metadata.

    Parameters
    ----------
    task_name : str

    operator_id : str

    tick_rate : float
        Master tick rate the records were aligned at, Hz.

    roster : tuple of StreamDescriptor

    success : bool, default=True

    start_time : datetime, default=None
        Wall-clock start (UTC). Filled in by ``begin_episode`` when None.

    duration : float, default=0.0
        Seconds, ``(record_count - 1) / tick_rate`` once finalized.

    phase : {"collection", "deployment"}, default="collection"

    method : {"exoskeleton", "human", "teleoperation"}, default="exoskeleton"
        How the demonstration was collected.

    hand_model : str, default=""
        Name of the hand model driving the joints streams.
    """

    task_name: str
    operator_id: str
    tick_rate: float
    roster: tuple[StreamDescriptor, ...]
    success: bool = True
    start_time: dt.datetime | None = None
    duration: float = 0.0
    phase: str = "collection"
    method: str = "exoskeleton"
    hand_model: str = ""
    record_count: int = 0
    empty: bool = True
    finalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "roster", tuple(self.roster))
        if self.duration < 0:
            raise ValueError(f"duration must be >= 0, got {self.duration}.")

    def descriptor(self, stream_id: str) -> StreamDescriptor:
        for desc in self.roster:
            if desc.stream_id == stream_id:
                return desc
        raise KeyError(stream_id)

    def to_text(self) -> str:
        items = [
            ("format_version", FORMAT_VERSION),
            ("task_name", self.task_name),
            ("operator_id", self.operator_id),
            (
                "start_time",
                self.start_time.isoformat() if self.start_time else "",
            ),
            ("tick_rate", repr(float(self.tick_rate))),
            ("phase", self.phase),
            ("method", self.method),
            ("success", str(self.success).lower()),
            ("hand_model", self.hand_model),
        ]
        for desc in self.roster:
            items.append(
                (
                    "stream",
                    f"{desc.stream_id} {desc.kind.name.lower()}"
                    f" {float(desc.nominal_rate)!r} {desc.staleness_budget}"
                    f" {desc.width}",
                )
            )
        items += [
            ("record_count", self.record_count),
            ("duration", repr(float(self.duration))),
            ("empty", str(self.empty).lower()),
            ("finalized", str(self.finalized).lower()),
        ]
        return format_config(items)

    @classmethod
    def from_config(cls, config: ConfigFile) -> EpisodeMeta:
        version = config.get_int("format_version")
        if version != FORMAT_VERSION:
            raise FormatVersionUnsupported(
                chunk=MANIFEST_NAME, reason=f"unknown version {version}"
            )
        roster = []
        for entry in config.get_all("stream"):
            tokens = entry.tokens
            if len(tokens) != 5:
                raise ParseError(
                    line=entry.line,
                    reason="expected 'stream: <id> <kind> <rate> <budget_ns>"
                    " <width>'",
                )
            try:
                roster.append(
                    StreamDescriptor(
                        stream_id=tokens[0],
                        kind=StreamKind[tokens[1].upper()],
                        nominal_rate=float(tokens[2]),
                        staleness_budget=int(tokens[3]),
                        width=int(tokens[4]),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ParseError(line=entry.line, reason=str(exc)) from exc

        start_time = None
        entry = config.get("start_time")
        if entry is not None and entry.value:
            try:
                start_time = dt.datetime.fromisoformat(entry.value)
            except ValueError as exc:
                raise ParseError(line=entry.line, reason=str(exc)) from None
        kwargs = dict(
            task_name=config.get_str("task_name"),
            operator_id=config.get_str("operator_id", ""),
            tick_rate=config.get_float("tick_rate"),
            roster=tuple(roster),
            success=config.get_bool("success"),
            start_time=start_time,
            duration=config.get_float("duration", 0.0),
            phase=config.get_str("phase", "collection"),
            method=config.get_str("method", "exoskeleton"),
            hand_model=config.get_str("hand_model", ""),
            record_count=config.get_int("record_count", 0),
            empty=config.get_bool("empty", True),
            finalized=config.get_bool("finalized", False),
        )
        try:
            return cls(**kwargs)
        except ValueError as exc:
            raise ParseError(line=0, reason=str(exc)) from None

    @classmethod
    def from_text(cls, text: str) -> EpisodeMeta:
        return cls.from_config(parse_config(text))


def write_manifest(episode_dir: str | os.PathLike, meta: EpisodeMeta) -> None:
    path = os.path.join(episode_dir, MANIFEST_NAME)
    tmp_path = path + ".tmp"
    try:
        with open(tmp_path, "w", encoding="utf-8") as f:
            f.write(meta.to_text())
        os.replace(tmp_path, path)
    except OSError as exc:
        raise IoError(path=path, reason=exc.strerror or str(exc)) from exc


def read_manifest(episode_dir: str | os.PathLike) -> EpisodeMeta:
    path = os.path.join(episode_dir, MANIFEST_NAME)
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise IoError(path=path, reason=exc.strerror or str(exc)) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(
            line=0, reason=f"not UTF-8 text ({exc.reason})"
        ) from None
    return EpisodeMeta.from_text(text)
