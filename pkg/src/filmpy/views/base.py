"""
Base View class for result renderers.

Handles output mode normalization and dispatch to the per-mode renderers.
"""

from abc import ABC, abstractmethod
from typing import Any

from filmpy.shared.output import OutputMode, get_output_mode


def _normalize_output_mode(mode: Any) -> OutputMode:
    """
    Convert enums or strings into an OutputMode.

    Args:
        mode: OutputMode, its string value, or None for the global mode

    Returns:
        OutputMode: Normalized output mode (defaults to PRETTY)
    """
    if mode is None:
        return get_output_mode()
    if isinstance(mode, OutputMode):
        return mode

    candidate = getattr(mode, 'value', mode)
    if isinstance(candidate, str):
        try:
            return OutputMode(candidate.lower())
        except ValueError:
            pass

    return OutputMode.PRETTY


class View(ABC):
    """
    Base class for all view components.

    Subclasses implement one renderer per output mode; :meth:`render`
    picks the one matching ``output_mode``.
    """

    def __init__(self, output_mode: Any = None):
        """
        Initialize view with output mode.

        Args:
            output_mode: PRETTY/DATA/AGENT, or None to follow ``--data``/``--agent``
        """
        self.output_mode = _normalize_output_mode(output_mode)

    @abstractmethod
    def render_pretty(self) -> str:
        """Formatted, human-readable text."""

    @abstractmethod
    def render_data(self) -> str:
        """Plain tab-separated text."""

    @abstractmethod
    def render_agent(self) -> str:
        """JSON."""

    def render(self) -> str:
        if self.output_mode == OutputMode.DATA:
            return self.render_data()
        if self.output_mode == OutputMode.AGENT:
            return self.render_agent()
        return self.render_pretty()

    def display(self):
        """Render and print view to stdout."""
        output = self.render()
        if output:
            print(output, end='')
