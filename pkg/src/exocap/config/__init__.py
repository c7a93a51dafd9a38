from ._parser import (
    ConfigEntry,
    ConfigFile,
    format_config,
    parse_config,
    read_config,
)

__all__ = [
    "ConfigEntry",
    "ConfigFile",
    "format_config",
    "parse_config",
    "read_config",
]
