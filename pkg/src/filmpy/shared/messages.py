"""Lightweight message helpers for CLI output."""

import sys
from typing import Optional


def _emit(prefix: str, message: str, title: Optional[str] = None, stream=None):
    stream = sys.stdout if stream is None else stream
    if title:
        print(f"{prefix} {title}: {message}", file=stream)
    else:
        print(f"{prefix} {message}", file=stream)


def print_error(message: str, title: Optional[str] = None):
    _emit("[ERROR]", message, title, stream=sys.stderr)


def print_warning(message: str, title: Optional[str] = None):
    _emit("[WARN]", message, title)


def print_info(message: str, title: Optional[str] = None):
    _emit("[INFO]", message, title)


def print_success(message: str, title: Optional[str] = None):
    _emit("[OK]", message, title)
