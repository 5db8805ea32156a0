"""Shared fixtures and helpers for CLI tests."""

import json
import re
from pathlib import Path

import pytest
from click.testing import CliRunner

# Regex to strip ANSI escape codes
ANSI_ESCAPE = re.compile(r"\x1b\[[0-9;]*m")


def strip_ansi(text: str) -> str:
    """Remove ANSI escape codes from text."""
    return ANSI_ESCAPE.sub("", text)


@pytest.fixture
def runner(isolated_home) -> CliRunner:
    """CLI runner with HOME redirected, so no user config file is read."""
    return CliRunner()


@pytest.fixture
def square_shape(tmp_path: Path) -> Path:
    """JSON file describing the square cusp torus."""
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"v1": [1, 0], "v2": [0, 1]}))
    return path
