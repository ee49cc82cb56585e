"""Shared infrastructure: configuration, errors, messages, logging, export."""
