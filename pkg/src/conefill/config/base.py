"""Configuration management for conefill.

Run settings come from three layers: RunConfig defaults, an optional JSON
config file, and command-line flags. YAML is a superset of JSON, so the file
is parsed with yaml.safe_load and YAML syntax is accepted too.
"""

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from conefill.models import RunConfig
from conefill.utils.env import get_config_path

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    """Configuration-related error."""

    pass


class Configurator:
    """Configuration manager for conefill runs.

    Examples:
        # Default location, missing file means no overrides
        config = Configurator().resolve({"quad_tol": 1e-9})

        # Explicit file, which must exist
        config = Configurator("/tmp/run.json").load()
    """

    def __init__(self, config_path: Path | str | None = None) -> None:
        """Initialize configuration manager.

        Args:
            config_path: Path to a config file. If None, uses the default
                location ($XDG_CONFIG_HOME/conefill/config.json or
                ~/.config/conefill/config.json), which may be absent.
        """
        self.explicit = config_path is not None
        self.config_path = (
            Path(config_path) if config_path is not None else get_config_path()
        )

    def _read_mapping(self) -> dict[str, Any]:
        """Read the config file as a mapping of RunConfig fields.

        Raises:
            ConfigError: If the file is missing (explicit path only), unreadable
                or not a mapping
        """
        if not self.config_path.exists():
            if self.explicit:
                raise ConfigError(f"Configuration file not found: {self.config_path}")
            logger.debug("No config file at %s, using defaults", self.config_path)
            return {}

        try:
            with self.config_path.open(encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(
                f"Invalid JSON in configuration file:\n{e}\n\n"
                f"Please check {self.config_path} for syntax errors."
            ) from e
        except OSError as e:
            raise ConfigError(f"Cannot read {self.config_path}: {e}") from e

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(
                f"Invalid configuration format in {self.config_path}: "
                "expected a JSON object"
            )
        logger.debug("Loaded config keys %s from %s", sorted(data), self.config_path)
        return data

    def resolve(self, overrides: dict[str, Any] | None = None) -> RunConfig:
        """Merge defaults, config file and overrides (None values are ignored).

        Args:
            overrides: Values from command-line flags

        Returns:
            Validated RunConfig

        Raises:
            ConfigError: If the file or the merged values are invalid
        """
        data = self._read_mapping()
        if overrides:
            data.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration:\n{e}") from e

    def load(self) -> RunConfig:
        """Load the config file on top of the defaults."""
        return self.resolve()
