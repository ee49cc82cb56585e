"""Helpers for reading and writing filmpy run configuration files.

A run configuration is a flat ``key = value`` file, parsed as TOML.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

try:
    import tomllib  # Python 3.11+
except ModuleNotFoundError:  # pragma: no cover - fallback for 3.10
    import tomli as tomllib

import tomli_w

from filmpy.shared.errors import ConfigError

RESOLVED_CONFIG_FILENAME = "run_config.toml"


def load_config(path: Optional[Path]) -> Dict[str, Any]:
    """Load a flat configuration file into a dictionary, empty if missing."""
    if path is None:
        return {}
    path = Path(path)
    if not path.exists():
        return {}
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    nested = [key for key, value in data.items() if isinstance(value, dict)]
    if nested:
        raise ConfigError(f"{path}: sections are not supported ({', '.join(nested)})")
    return data


def parse_value(text: str) -> Any:
    """Parse a single override value as a TOML literal, falling back to a bare string."""
    try:
        return tomllib.loads(f"value = {text}")["value"]
    except tomllib.TOMLDecodeError:
        return text.strip()


def parse_overrides(pairs: Optional[Iterable[str]]) -> Dict[str, Any]:
    """Turn ``KEY=VALUE`` strings into a dictionary."""
    overrides: Dict[str, Any] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"Override must look like KEY=VALUE: {pair!r}")
        key, value = pair.split("=", 1)
        key = key.strip().replace("-", "_").lower()
        if not key:
            raise ConfigError(f"Override has an empty key: {pair!r}")
        overrides[key] = parse_value(value)
    return overrides


def write_config(path: Path, values: Mapping[str, Any]) -> Path:
    """Persist a resolved configuration as TOML and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    clean = {key: _tomlable(value) for key, value in sorted(values.items()) if value is not None}
    with path.open("wb") as handle:
        tomli_w.dump(clean, handle)
    return path


def _tomlable(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_tomlable(item) for item in value]
    if isinstance(value, Enum):
        return value.value
    return value


__all__ = [
    "RESOLVED_CONFIG_FILENAME",
    "load_config",
    "parse_overrides",
    "parse_value",
    "write_config",
]
