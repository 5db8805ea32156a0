"""Unit tests for conefill.slopes."""
