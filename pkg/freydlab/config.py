"""Configuration management for FreydLab.
Handles environment variables, search bounds and runtime settings."""

import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .errors import FreydLabError

BOUND_KEYS = ("rewrite", "cert", "sat", "size")


@dataclass(frozen=True)
class Bounds:
    """Search and enumeration bounds used throughout the library."""

    rewrite: int = 1000
    cert: int = 4
    sat: int = 3
    size: int = 2

    def merged(self, **overrides: Optional[int]) -> "Bounds":
        """Return a copy with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        for key, value in changes.items():
            if key not in BOUND_KEYS:
                raise FreydLabError(f"Unknown bound '{key}'")
            if value < 0:
                raise FreydLabError(f"Bound '{key}' must be non-negative, got {value}")
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def parse_bounds(text: Optional[str], base: Optional[Bounds] = None) -> Bounds:
    """
    Parse a bounds override string such as ``"rewrite=500,cert=3"``.

    Args:
        text: Comma separated ``key=value`` pairs; empty or None keeps ``base``
        base: Bounds to start from (defaults to the built-in defaults)

    Returns:
        The resulting Bounds
    """
    bounds = base or Bounds()
    if not text or not text.strip():
        return bounds
    overrides: Dict[str, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in BOUND_KEYS:
            raise FreydLabError(f"Invalid bound entry '{item}' (expected one of {', '.join(BOUND_KEYS)})")
        try:
            overrides[key] = int(value)
        except ValueError:
            raise FreydLabError(f"Bound '{key}' is not an integer: '{value}'") from None
    return bounds.merged(**overrides)


class Config:
    """Central configuration class for the library."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self.reload()
        self._initialized = True

    def reload(self) -> None:
        """Re-read the environment (``.env`` first, ``.env.local`` overrides)."""
        load_dotenv()
        load_dotenv(".env.local", override=True)

        bounds = parse_bounds(os.getenv("FREYDLAB_BOUNDS"))
        self._config = {
            "app": {
                "name": "freydlab",
                "version": "0.1.0",
                "environment": os.getenv("ENVIRONMENT", "development"),
                "log_level": os.getenv("LOG_LEVEL", "INFO"),
            },
            "bounds": bounds.to_dict(),
            "search": {
                # coefficients tried when looking for isomorphisms among hom generators
                "iso_coefficients": int(os.getenv("FREYDLAB_ISO_COEFFICIENTS", "1")),
                # paths a linear system over a cyclic free category may reach before giving up
                "free_keys": int(os.getenv("FREYDLAB_FREE_KEYS", "2000")),
                # wall-clock seconds one formal certificate search may take
                "seconds": float(os.getenv("FREYDLAB_SEARCH_SECONDS", "60")),
            },
            "runtime": {
                "workers": int(os.getenv("FREYDLAB_WORKERS", "1")),
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot notation key."""
        keys = key.split(".")
        value = self._config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def bounds(self, **overrides: Optional[int]) -> Bounds:
        """Configured bounds with explicit overrides (e.g. command-line flags) applied."""
        return Bounds(**self._config["bounds"]).merged(**overrides)

    def to_dict(self) -> Dict[str, Any]:
        """Return the entire configuration as a dictionary."""
        return self._config

    def save_to_yaml(self, filepath: str = "freydlab.yaml"):
        """Save configuration to a YAML file."""
        with open(filepath, "w", encoding="utf-8") as f:
            yaml.safe_dump(self._config, f, default_flow_style=False)


# Global configuration instance
config = Config()


def get_config() -> Config:
    """Get the global configuration instance."""
    return config
