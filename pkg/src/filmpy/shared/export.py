"""
CSV, legacy VTK and YAML writers for run outputs.

All reals are written with 17 significant digits so a re-read reproduces
them bit-exactly; no locale is consulted.
"""

from __future__ import annotations

import csv
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import yaml

from filmpy.shared.errors import ExportError

_LOGGER = logging.getLogger(__name__)

VTK_HEADER = "# vtk DataFile Version 3.0"
VTK_TRIANGLE = 5


def format_real(value: Any) -> str:
    """Format a number for CSV/VTK output (17-digit round trip)."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], path: Path) -> Path:
    """Write a table with a header row to ``path``."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(list(header))
            for row in rows:
                writer.writerow([format_real(value) for value in row])
    except OSError as exc:
        raise ExportError(path, str(exc)) from exc
    _LOGGER.debug("CSV written to '%s'", path)
    return path


def read_csv(path: Path) -> Tuple[List[str], List[List[Any]]]:
    """Read a CSV written by :func:`write_csv`; numeric cells become floats."""
    path = Path(path)
    try:
        with path.open("r", newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            rows = [[_parse_cell(cell) for cell in row] for row in reader]
    except (OSError, StopIteration) as exc:
        raise ExportError(path, str(exc) or "empty file") from exc
    return header, rows


def _parse_cell(cell: str) -> Any:
    try:
        return float(cell)
    except ValueError:
        return cell


def write_vtk(
    nodes: np.ndarray,
    tris: np.ndarray,
    path: Path,
    point_data: Optional[Mapping[str, np.ndarray]] = None,
    title: str = "filmpy mesh",
) -> Path:
    """Export a triangle mesh with nodal scalars as legacy ASCII VTK."""
    path = Path(path)
    nodes = np.asarray(nodes, dtype=float)
    tris = np.asarray(tris, dtype=int)
    n_nodes, n_tris = nodes.shape[0], tris.shape[0]

    lines = [VTK_HEADER, title, "ASCII", "DATASET UNSTRUCTURED_GRID"]
    lines.append(f"POINTS {n_nodes} double")
    for x, z in nodes:
        lines.append(f"{format_real(x)} {format_real(z)} 0")
    lines.append(f"CELLS {n_tris} {4 * n_tris}")
    for i, j, k in tris:
        lines.append(f"3 {i} {j} {k}")
    lines.append(f"CELL_TYPES {n_tris}")
    lines.extend([str(VTK_TRIANGLE)] * n_tris)

    if point_data:
        lines.append(f"POINT_DATA {n_nodes}")
        for name, values in point_data.items():
            values = np.asarray(values, dtype=float)
            if values.shape != (n_nodes,):
                raise ExportError(path, f"field '{name}' has shape {values.shape}, expected ({n_nodes},)")
            lines.append(f"SCALARS {name} double 1")
            lines.append("LOOKUP_TABLE default")
            lines.extend(format_real(v) for v in values)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ExportError(path, str(exc)) from exc
    _LOGGER.info("VTK written to '%s' (nodes=%d, tris=%d)", path, n_nodes, n_tris)
    return path


def write_summary(path: Path, summary: Dict[str, Any]) -> Path:
    """Write a YAML run summary (numpy scalars converted to builtins)."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as handle:
            yaml.safe_dump(_plain(summary), handle, sort_keys=False)
    except OSError as exc:
        raise ExportError(path, str(exc)) from exc
    return path


def load_summary(path: Path) -> Dict[str, Any]:
    """Read a YAML run summary back."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            return yaml.safe_load(handle) or {}
    except OSError as exc:
        raise ExportError(path, str(exc)) from exc


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    return value


__all__ = [
    "format_real",
    "load_summary",
    "read_csv",
    "write_csv",
    "write_summary",
    "write_vtk",
]
