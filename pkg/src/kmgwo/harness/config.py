"""Flat ``key = value`` configuration files mirroring the CLI flags.

Blank lines and ``#`` comments are ignored. Keys may use dashes or
underscores (``data-dir`` and ``data_dir`` are the same key).
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict

from ..core import ConfigurationError

_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}

# key -> converter
KEYS = {
    "algo": str,
    "problem": str,
    "agents": int,
    "iters": int,
    "reps": int,
    "vessel_reps": int,
    "seed": int,
    "data_dir": str,
    "out": str,
    "penalty": float,
    "cluster_fitness": str,
    "paper_literal_constraints": "bool",
    "workers": int,
}


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in _BOOL_TRUE:
        return True
    if t in _BOOL_FALSE:
        return False
    raise ConfigurationError(f"expected a boolean, got {text!r}")


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, object]:
    values: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in KEYS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        conv = KEYS[key]
        try:
            values[key] = parse_bool(value) if conv == "bool" else conv(value)
        except (ValueError, ConfigurationError) as exc:
            raise ConfigurationError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return values


def load_config(path) -> Dict[str, object]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, str(path))
