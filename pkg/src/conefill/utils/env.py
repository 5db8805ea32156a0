"""Environment-aware path resolution utilities.

Config and log locations follow the XDG Base Directory specification and
respect HOME, so tests can redirect them to a temporary directory.
"""

import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

APP_NAME = "conefill"
CONFIG_FILE_NAME = "config.json"
LOG_FILE_NAME = "conefill.log"


def _validate_xdg_path(xdg_var_name: str, xdg_value: str) -> Path | None:
    """Validate an XDG base directory and append the application name.

    Args:
        xdg_var_name: Name of the XDG environment variable
        xdg_value: Value from the environment variable

    Returns:
        Application directory if the value is absolute, None otherwise
    """
    xdg_path = Path(xdg_value)
    if not xdg_path.is_absolute():
        logger.warning(
            "%s contains relative path '%s' which violates "
            "XDG Base Directory specification. Ignoring and using default.",
            xdg_var_name,
            xdg_value,
        )
        return None
    return xdg_path / APP_NAME


def get_home_dir() -> Path:
    """Get the user's home directory (HOME first, then Path.home())."""
    home = os.environ.get("HOME")
    return Path(home) if home else Path.home()


def _app_dir(xdg_var_name: str, home_subdir: str) -> Path:
    xdg_value = os.environ.get(xdg_var_name)
    if xdg_value:
        validated_path = _validate_xdg_path(xdg_var_name, xdg_value)
        if validated_path:
            return validated_path
    return get_home_dir() / home_subdir / APP_NAME


def get_config_dir() -> Path:
    """Configuration directory: $XDG_CONFIG_HOME/conefill or ~/.config/conefill."""
    return _app_dir("XDG_CONFIG_HOME", ".config")


def get_cache_dir() -> Path:
    """Get the cache directory ($XDG_CACHE_HOME/conefill or ~/.cache/conefill)."""
    return _app_dir("XDG_CACHE_HOME", ".cache")


def get_config_path() -> Path:
    """Default location of the JSON run configuration."""
    return get_config_dir() / CONFIG_FILE_NAME


def get_log_path() -> Path:
    """Location of the log file written by the command-line entry point."""
    return get_cache_dir() / LOG_FILE_NAME
