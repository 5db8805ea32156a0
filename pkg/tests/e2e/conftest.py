"""Pytest configuration for e2e tests."""

import os
import subprocess
import sys
from collections.abc import Callable
from pathlib import Path

import pytest

# Generous limit for the full invariant suite on slow CI machines
COMMAND_TIMEOUT = 300


Runner = Callable[..., subprocess.CompletedProcess[str]]


@pytest.fixture
def run_conefill(isolated_home: Path) -> Runner:
    """Run the conefill entry point in a fresh interpreter.

    HOME points at a temporary directory, so the log file and the default
    config location stay inside it.
    """

    def run(*args: str) -> subprocess.CompletedProcess[str]:
        env = {**os.environ, "HOME": str(isolated_home)}
        env.pop("XDG_CONFIG_HOME", None)
        env.pop("XDG_CACHE_HOME", None)
        return subprocess.run(  # noqa: S603
            [sys.executable, "-m", "conefill.cli.app", *args],
            capture_output=True,
            text=True,
            env=env,
            timeout=COMMAND_TIMEOUT,
            check=False,
        )

    return run
