"""Configuration management for conefill.

This module loads run settings from an optional config file and merges
them with command-line overrides.
"""

from conefill.config.base import ConfigError, Configurator

__all__ = [
    "ConfigError",
    "Configurator",
]
