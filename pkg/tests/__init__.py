"""Tests for conefill."""
