"""Utilities for conefill."""
