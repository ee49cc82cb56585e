"""Full-scale reference runs (marked slow)."""
