"""Service configuration: KEY=VALUE file with environment overrides.

The file holds one ``key = value`` pair per line; '#' starts a comment.
Every key can be overridden by an environment variable named
``ASPECTSCOPE_<KEY>`` (upper-cased key).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from ..errors import ConfigError

ENV_PREFIX = "ASPECTSCOPE_"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    snapshot: str = ""
    aspect_model: str = ""
    models_dir: str = ""
    gazetteer: str = ""
    questions: str = ""
    cors_origin: str = ""
    default_limit: int = 20
    membership_threshold: float = 0.25
    recommend_seed: int = 0

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ConfigError(f"port out of range: {self.port}")
        if self.default_limit < 1:
            raise ConfigError("default_limit must be >= 1")
        if not 0.0 <= self.membership_threshold <= 1.0:
            raise ConfigError("membership_threshold must be in [0, 1]")


_FIELD_TYPES = {f.name: f.type for f in fields(ServiceConfig)}


def _parse_value(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    try:
        if kind in ("int", int):
            return int(raw)
        if kind in ("float", float):
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: {exc}") from exc


def load_config(path: str | Path | None = None, environ=None) -> ServiceConfig:
    """Read the config file (if given) and apply environment overrides."""
    if environ is None:
        environ = os.environ
    values: dict = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected KEY=VALUE")
            key, _, raw = line.partition("=")
            key = key.strip().lower()
            if key not in _FIELD_TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = _parse_value(key, raw.strip())
    for key in _FIELD_TYPES:
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            values[key] = _parse_value(key, raw)
    return ServiceConfig(**values)
