"""End-to-end tests for conefill."""
