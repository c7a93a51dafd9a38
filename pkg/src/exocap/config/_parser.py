"""Line-oriented ``key: value`` text dialect.

Shared by hand configs, scenarios, pipeline configs, safety envelopes and
episode manifests::

    # comment
    name: inspire6
    joint: thumb_yaw 0.0 1.308

Keys may repeat; declaration order is preserved.
"""

from __future__ import annotations

import dataclasses
import os
import re
from typing import Iterator

from exocap.exceptions import IoError, ParseError

_KEY_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")


@dataclasses.dataclass(frozen=True)
class ConfigEntry:
    """Single ``key: value`` line."""

    key: str
    value: str
    line: int

    @property
    def tokens(self) -> list[str]:
        return self.value.split()


class ConfigFile:
    """Ordered collection of parsed config entries.

    Parameters
    ----------
    entries : list of ConfigEntry
    """

    def __init__(self, entries: list[ConfigEntry]):
        self.entries = entries

    def __iter__(self) -> Iterator[ConfigEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return any(e.key == key for e in self.entries)

    def keys(self) -> list[str]:
        return list(dict.fromkeys(e.key for e in self.entries))

    def get_all(self, key: str) -> list[ConfigEntry]:
        return [e for e in self.entries if e.key == key]

    def get(self, key: str, default=None) -> ConfigEntry | None:
        """Returns the last entry for ``key``, or ``default``."""
        found = self.get_all(key)
        return found[-1] if found else default

    def _require(self, key: str) -> ConfigEntry:
        entry = self.get(key)
        if entry is None:
            raise ParseError(line=0, reason=f"missing required key '{key}'")
        return entry

    def get_str(self, key: str, default: str | None = None) -> str:
        entry = self.get(key)
        if entry is None:
            if default is None:
                self._require(key)
            return default
        return entry.value

    def get_float(self, key: str, default: float | None = None) -> float:
        entry = self.get(key)
        if entry is None:
            if default is None:
                self._require(key)
            return default
        return _to_float(entry.value, entry.line)

    def get_int(self, key: str, default: int | None = None) -> int:
        entry = self.get(key)
        if entry is None:
            if default is None:
                self._require(key)
            return default
        try:
            return int(entry.value)
        except ValueError:
            raise ParseError(
                line=entry.line, reason=f"expected integer, got '{entry.value}'"
            ) from None

    def get_bool(self, key: str, default: bool | None = None) -> bool:
        entry = self.get(key)
        if entry is None:
            if default is None:
                self._require(key)
            return default
        value = entry.value.lower()
        if value in ("true", "yes", "1"):
            return True
        if value in ("false", "no", "0"):
            return False
        raise ParseError(
            line=entry.line, reason=f"expected boolean, got '{entry.value}'"
        )

    def get_floats(
        self, key: str, default: list[float] | None = None
    ) -> list[float]:
        entry = self.get(key)
        if entry is None:
            if default is None:
                self._require(key)
            return list(default)
        return [_to_float(tok, entry.line) for tok in entry.tokens]


def _to_float(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(
            line=line, reason=f"expected number, got '{token}'"
        ) from None


def parse_config(text: str) -> ConfigFile:
    """Parses ``key: value`` text.

    Parameters
    ----------
    text : str

    Returns
    -------
    ConfigFile

    Raises
    ------
    ParseError if a line has no ``:`` separator or an invalid key.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(line=lineno, reason="expected 'key: value'")
        if not _KEY_RE.match(key):
            raise ParseError(line=lineno, reason=f"invalid key '{key}'")
        entries.append(ConfigEntry(key=key, value=value.strip(), line=lineno))
    return ConfigFile(entries)


def read_config(path: str | os.PathLike) -> ConfigFile:
    """Reads and parses a config file."""
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise IoError(path=path, reason=exc.strerror or str(exc)) from exc
    return parse_config(text)


def format_config(items: list[tuple[str, object]]) -> str:
    """Renders ``(key, value)`` pairs back into the text dialect."""
    return "".join(f"{key}: {value}\n" for key, value in items)
