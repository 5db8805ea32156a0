"""Unit tests for conefill.bounds."""
