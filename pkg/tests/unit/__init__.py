"""Unit tests for filmpy."""
