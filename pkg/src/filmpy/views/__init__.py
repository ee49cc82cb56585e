"""
Views for result tables.

- View: base class with output mode support (PRETTY/DATA/AGENT)
- TableView: fixed-column tables (convergence, density ratios, diagnostics)
"""

from filmpy.shared.output import OutputMode
from filmpy.views.base import View
from filmpy.views.table import ColumnConfig, TableView, format_cell, key_value_view

__all__ = [
    'ColumnConfig',
    'OutputMode',
    'TableView',
    'View',
    'format_cell',
    'key_value_view',
]
