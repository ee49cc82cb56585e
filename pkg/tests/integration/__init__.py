"""Integration tests for filmpy."""
