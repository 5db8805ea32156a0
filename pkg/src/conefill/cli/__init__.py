"""CLI module with reusable elements and flows."""

from conefill.cli.app import main

__all__ = ["main"]
