"""Unit tests for conefill.utils.logging module."""

import logging
import warnings
from collections.abc import Iterator
from pathlib import Path

import pytest

from conefill.utils.logging import (
    LOG_FORMAT,
    SOURCE_ROOT,
    RelativePathFormatter,
    setup_logging,
)


@pytest.fixture
def root_logger() -> Iterator[logging.Logger]:
    """Root logger restored to its previous handlers and level after the test."""
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield root
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)
    logging.captureWarnings(False)


@pytest.mark.unit
class TestRelativePathFormatter:
    """Test RelativePathFormatter class."""

    def test_default_base_path(self):
        """Test paths are relative to the directory holding the package."""
        formatter = RelativePathFormatter(LOG_FORMAT)
        assert formatter.base_path == str(SOURCE_ROOT)
        assert (SOURCE_ROOT / "conefill" / "utils" / "logging.py").exists()

    def test_outside_base_uses_logger_name(self, tmp_path: Path):
        """Test records from outside the base path show the logger name."""
        formatter = RelativePathFormatter(LOG_FORMAT, base_path=tmp_path / "src")
        record = logging.LogRecord(
            name="scipy.integrate",
            level=logging.DEBUG,
            pathname=str(tmp_path / "site" / "quadpack.py"),
            lineno=7,
            msg="slow",
            args=(),
            exc_info=None,
        )
        assert "(scipy.integrate:7)" in formatter.format(record)

    def test_format_converts_to_relative_path(self, tmp_path: Path):
        """Test the module path is shown relative to the base path."""
        formatter = RelativePathFormatter(LOG_FORMAT, base_path=str(tmp_path))
        record = logging.LogRecord(
            name="conefill.bounds.volume",
            level=logging.INFO,
            pathname=str(tmp_path / "bounds" / "volume.py"),
            lineno=42,
            msg="z_hat=%.3f",
            args=(0.75,),
            exc_info=None,
        )

        formatted = formatter.format(record)
        assert "(bounds/volume.py:42)" in formatted
        assert "z_hat=0.750" in formatted
        assert "[   INFO]" in formatted

    def test_format_handles_missing_pathname(self):
        """Test format handles record with empty pathname."""
        formatter = RelativePathFormatter(LOG_FORMAT)
        record = logging.LogRecord(
            name="test",
            level=logging.WARNING,
            pathname="",
            lineno=10,
            msg="Test message",
            args=(),
            exc_info=None,
        )

        formatted = formatter.format(record)
        assert "Test message" in formatted
        assert "[WARNING]" in formatted


@pytest.mark.unit
class TestSetupLogging:
    """Test setup_logging function."""

    def test_creates_log_file(self, tmp_path: Path, root_logger):
        """Test the log file and its parent directory are created."""
        log_file = tmp_path / "cache" / "conefill.log"
        setup_logging(log_file)
        logging.getLogger("conefill.test").info("hello")
        assert log_file.exists()
        assert "hello" in log_file.read_text()

    def test_truncates_on_each_run(self, tmp_path: Path, root_logger):
        """Test a new run starts an empty log."""
        log_file = tmp_path / "conefill.log"
        log_file.write_text("old run\n")
        setup_logging(log_file)
        assert "old run" not in log_file.read_text()

    def test_repeated_setup_replaces_handlers(self, tmp_path: Path, root_logger):
        """Test calling setup twice leaves a single file handler of ours."""
        before = len(root_logger.handlers)
        setup_logging(tmp_path / "a.log")
        setup_logging(tmp_path / "b.log")
        assert len(root_logger.handlers) == before + 1

    def test_extra_handlers(self, tmp_path: Path, root_logger):
        """Test extra handlers are attached with the shared formatter."""
        extra_handler = logging.StreamHandler()
        setup_logging(tmp_path / "test.log", extra_handlers=[extra_handler])
        assert extra_handler in root_logger.handlers
        assert isinstance(extra_handler.formatter, RelativePathFormatter)

    def test_sets_level(self, tmp_path: Path, root_logger):
        """Test setup_logging sets the correct level."""
        setup_logging(tmp_path / "test.log", level=logging.WARNING)
        assert root_logger.level == logging.WARNING

    def test_captures_warnings(self, tmp_path: Path, root_logger):
        """Test Python warnings end up in the log file."""
        log_file = tmp_path / "test.log"
        setup_logging(log_file)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.warn("integration slow", UserWarning, stacklevel=1)
        assert "integration slow" in log_file.read_text()
