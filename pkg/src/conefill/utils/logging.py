"""Logging configuration for the conefill console entry point.

Records are written to a single file per run. Paths in the log are shown
relative to the source tree (``conefill/bounds/volume.py``), and records from
outside it (scipy, numpy, ``py.warnings``) fall back to the logger name.
"""

import logging
import os
from collections.abc import Sequence
from pathlib import Path

# levelname width 7 fits "WARNING"; %(relpath)s is added by RelativePathFormatter
LOG_FORMAT = "[%(levelname)7s] %(asctime)s (%(relpath)s:%(lineno)d) --- %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Directory holding the conefill package: src/ in a checkout, site-packages installed
SOURCE_ROOT = Path(__file__).resolve().parents[2]

# Marks handlers installed by setup_logging so a repeated call replaces them
_HANDLER_TAG = "_conefill_handler"


class RelativePathFormatter(logging.Formatter):
    """Formatter that shows source paths relative to a base directory."""

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        base_path: str | Path | None = None,
    ) -> None:
        """Initialize the formatter.

        Args:
            fmt: Log format string
            datefmt: Date format string
            base_path: Directory paths are made relative to (default: SOURCE_ROOT)
        """
        super().__init__(fmt, datefmt)
        self.base_path = str(base_path) if base_path is not None else str(SOURCE_ROOT)

    def relative_path(self, record: logging.LogRecord) -> str:
        """Source path of the record below base_path, or the logger name."""
        if not record.pathname:
            return record.filename or record.name
        try:
            relpath = os.path.relpath(record.pathname, self.base_path)
        except ValueError:
            # Different drives on Windows
            return record.name
        if relpath.startswith(os.pardir):
            return record.name
        return Path(relpath).as_posix()

    def format(self, record: logging.LogRecord) -> str:
        """Format the record with its relative path."""
        record.relpath = self.relative_path(record)
        return super().format(record)


def _remove_own_handlers(root_logger: logging.Logger) -> None:
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()


def setup_logging(
    log_file: Path,
    level: int = logging.DEBUG,
    extra_handlers: Sequence[logging.Handler] | None = None,
) -> None:
    """Send log records of this run to log_file.

    Handlers from an earlier call are replaced. Python warnings (for example
    scipy's IntegrationWarning) are routed into the log as well.

    Args:
        log_file: Path to log file (truncated on each run)
        level: Log level (default: DEBUG)
        extra_handlers: Additional handlers, e.g. a StreamHandler for the console
    """
    formatter = RelativePathFormatter(LOG_FORMAT, LOG_DATE_FORMAT)

    log_file.parent.mkdir(parents=True, exist_ok=True)
    handlers: list[logging.Handler] = [logging.FileHandler(log_file, mode="w")]
    handlers.extend(extra_handlers or ())

    root_logger = logging.getLogger()
    _remove_own_handlers(root_logger)
    root_logger.setLevel(level)
    for handler in handlers:
        handler.setFormatter(formatter)
        setattr(handler, _HANDLER_TAG, True)
        root_logger.addHandler(handler)

    logging.captureWarnings(True)
