"""Run log configuration."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

RUN_LOG_FILENAME = "run.log"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_HANDLER_TAG = "_filmpy_handler"


def configure_run_log(out_dir: Optional[Path], verbose: bool = False) -> Optional[Path]:
    """Attach a plain-text run log under ``out_dir`` plus a stderr handler.

    Calling it again replaces the handlers installed by a previous call.
    Returns the log path (None when no directory is given).
    """
    root = logging.getLogger("filmpy")
    for handler in list(root.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root.removeHandler(handler)
            handler.close()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    root.propagate = False

    console = logging.StreamHandler()
    console.setLevel(logging.INFO if verbose else logging.WARNING)
    console.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    setattr(console, _HANDLER_TAG, True)
    root.addHandler(console)

    if out_dir is None:
        return None
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / RUN_LOG_FILENAME
    file_handler = logging.FileHandler(path, mode="w", encoding="utf-8")
    file_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    setattr(file_handler, _HANDLER_TAG, True)
    root.addHandler(file_handler)
    return path


__all__ = ["configure_run_log", "RUN_LOG_FILENAME", "LOG_FORMAT"]
