"""
TableView component - result tables in the three output modes.

Used for convergence tables, density-ratio summaries and run diagnostics.
"""

import json
import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Union

from filmpy.views.base import View


def format_cell(value: Any, precision: int = 4) -> str:
    """Scientific notation for reals, plain text otherwise; None is '-'."""
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, float) or hasattr(value, 'dtype'):
        value = float(value)
        if math.isnan(value):
            return '-'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        if value == int(value) and abs(value) < 1e6:
            return str(int(value)) if precision == 0 else f"{value:.{precision}g}"
        return f"{value:.{precision}e}"
    return str(value)


@dataclass
class ColumnConfig:
    """Configuration for a table column."""
    name: str                                  # Column header
    field: Union[str, Callable]                # Key, attribute or callable
    align: str = 'right'                       # left or right
    formatter: Optional[Callable] = None       # Custom formatter

    def raw(self, obj: Any) -> Any:
        if callable(self.field):
            return self.field(obj)
        if isinstance(obj, dict):
            return obj.get(self.field)
        return getattr(obj, self.field, None)

    def get_value(self, obj: Any) -> str:
        value = self.raw(obj)
        if self.formatter is not None and value is not None:
            return self.formatter(value)
        return format_cell(value)


class TableView(View):
    """Fixed-column table over a list of dicts or objects."""

    def __init__(
        self,
        data: List[Any],
        columns: List[ColumnConfig],
        title: Optional[str] = None,
        output_mode: Any = None,
    ):
        super().__init__(output_mode)
        self.data = list(data)
        self.columns = columns
        self.title = title

    def _cells(self) -> List[List[str]]:
        return [[col.get_value(obj) for col in self.columns] for obj in self.data]

    def render_pretty(self) -> str:
        headers = [col.name for col in self.columns]
        rows = self._cells()
        if not rows:
            return f"\n{self.title or 'Table'}\n{'-' * 20}\nNo rows.\n"

        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]

        def line(cells):
            parts = []
            for col, cell, width in zip(self.columns, cells, widths):
                parts.append(cell.ljust(width) if col.align == 'left' else cell.rjust(width))
            return "  ".join(parts).rstrip()

        out = []
        if self.title:
            out.append(self.title)
        out.append(line(headers))
        out.append("  ".join('-' * w for w in widths))
        out.extend(line(r) for r in rows)
        return "\n".join(out) + "\n"

    def render_data(self) -> str:
        rows = self._cells()
        if not rows:
            return ""
        lines = ["\t".join(col.name for col in self.columns)]
        lines.extend("\t".join(r) for r in rows)
        return "\n".join(lines) + "\n"

    def render_agent(self) -> str:
        items = []
        for obj in self.data:
            item = {}
            for col in self.columns:
                value = col.raw(obj)
                if hasattr(value, 'item'):
                    value = value.item()
                if isinstance(value, float) and not math.isfinite(value):
                    value = None
                item[col.name] = value
            items.append(item)
        result = {"items": items, "count": len(items)}
        if self.title:
            result["title"] = self.title
        return json.dumps(result, indent=2) + "\n"


def key_value_view(pairs: List[tuple], title: Optional[str] = None,
                   output_mode: Any = None) -> TableView:
    """Two-column table for scalar diagnostics."""
    rows = [{"name": name, "value": value} for name, value in pairs]
    columns = [
        ColumnConfig("name", "name", align='left'),
        ColumnConfig("value", "value"),
    ]
    return TableView(rows, columns, title=title, output_mode=output_mode)
