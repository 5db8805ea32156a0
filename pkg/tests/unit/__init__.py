"""Unit tests for conefill."""
