"""filmpy test suite."""
