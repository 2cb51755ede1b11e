"""
Configuration Loader - Loads and manages engine configuration.
Supports YAML config files with environment variable interpolation.
"""

import copy
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml


DEFAULTS: Dict[str, Any] = {
    "normalization": {
        "t_bound": 8,
        "selection": "smallest",
    },
    "certificates": {
        "degree_bound": None,
    },
    "groebner": {
        "cache_size": 256,
    },
    "solver": {
        "workers": 1,
        "shear_inflation_limit": 4,
        "verify": True,
    },
    "testing": {
        "seed": 20240611,
    },
    "logging": {
        "level": "INFO",
    },
    "stages": [
        "analyze",
        "normalize",
        "regularize",
        "solve",
        "verify",
        "check_free",
        "membership",
    ],
}


def _interpolate_env_vars(value: Any) -> Any:
    """Recursively interpolate environment variables in config values."""
    if isinstance(value, str):
        # Match ${VAR_NAME} or $VAR_NAME patterns
        pattern = r'\$\{([^}]+)\}|\$([A-Z_][A-Z0-9_]*)'

        def replace(match):
            var_name = match.group(1) or match.group(2)
            return os.getenv(var_name, "")

        return re.sub(pattern, replace, value)
    elif isinstance(value, dict):
        return {k: _interpolate_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [_interpolate_env_vars(item) for item in value]
    return value


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Deep-merge ``override`` into a copy of ``base``."""
    result = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


class Config:
    """
    Configuration manager.

    Usage:
        config = Config.load("config.yaml")
        bound = config.get("normalization.t_bound")
    """

    def __init__(self, data: Dict[str, Any]):
        self._data = _merge(DEFAULTS, data)

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        """Load configuration from a YAML file."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")

        with open(path, "r", encoding="utf-8") as f:
            raw_data = yaml.safe_load(f) or {}

        # Interpolate environment variables
        data = _interpolate_env_vars(raw_data)
        return cls(data)

    @classmethod
    def defaults(cls) -> "Config":
        """Configuration made of the built-in defaults only."""
        return cls({})

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a config value by dot-notation key.

        Example:
            config.get("solver.shear_inflation_limit")
        """
        keys = key.split(".")
        value = self._data

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def get_section(self, key: str) -> Dict[str, Any]:
        """Get an entire config section as a dict."""
        result = self.get(key, {})
        return result if isinstance(result, dict) else {}

    def set(self, key: str, value: Any) -> None:
        """Override a value by dot-notation key (used for CLI flags)."""
        keys = key.split(".")
        node = self._data
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    @property
    def raw(self) -> Dict[str, Any]:
        """Get the raw config data."""
        return self._data


@dataclass
class EngineSettings:
    """Typed view of the configuration handed to the algorithms."""

    t_bound: int = 8
    selection: str = "smallest"
    cert_degree_bound: Optional[int] = None
    gb_cache_size: int = 256
    workers: int = 1
    shear_inflation_limit: int = 4
    verify: bool = True
    seed: int = 20240611
    stages: List[str] = field(default_factory=lambda: list(DEFAULTS["stages"]))

    @classmethod
    def from_config(cls, config: Config) -> "EngineSettings":
        settings = cls(
            t_bound=int(config.get("normalization.t_bound", 8)),
            selection=str(config.get("normalization.selection", "smallest")),
            cert_degree_bound=config.get("certificates.degree_bound"),
            gb_cache_size=int(config.get("groebner.cache_size", 256)),
            workers=int(config.get("solver.workers", 1)),
            shear_inflation_limit=int(config.get("solver.shear_inflation_limit", 4)),
            verify=bool(config.get("solver.verify", True)),
            seed=int(config.get("testing.seed", 20240611)),
            stages=list(config.get("stages", DEFAULTS["stages"])),
        )
        if settings.t_bound < 0:
            raise ValueError("normalization.t_bound must be non-negative")
        if settings.cert_degree_bound is not None and int(settings.cert_degree_bound) < 1:
            raise ValueError("certificates.degree_bound must be positive")
        if settings.selection not in ("smallest", "random"):
            raise ValueError(f"Unknown normalization.selection: {settings.selection}")
        return settings


# Global config instance
_config: Optional[Config] = None


def load_config(path: str | Path = "config.yaml") -> Config:
    """Load the global config."""
    global _config
    _config = Config.load(path)
    return _config


def get_config() -> Config:
    """Get the global config instance, falling back to the built-in defaults."""
    global _config
    if _config is None:
        _config = Config.defaults()
    return _config

