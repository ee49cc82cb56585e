"""Local quasi-uniformity diagnostics: consecutive cell-area ratios along the boundary."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from filmpy.mesh.generate import signed_areas
from filmpy.mesh.models import TriMesh
from filmpy.shared.errors import InvalidArgument

RATIO_HEADER = ("index", "ratio", "axis", "strip")


@dataclass(frozen=True)
class DensityRatio:
    index: int
    ratio: float
    axis: str
    strip: str

    def as_row(self) -> Tuple:
        return (self.index, self.ratio, self.axis, self.strip)


def cell_areas(mesh: TriMesh) -> np.ndarray:
    """Physical area of each structured cell, shape ``(nz, nx)``."""
    areas = signed_areas(mesh)
    return (areas[0::2] + areas[1::2]).reshape(mesh.nz, mesh.nx)


def density_ratio_report(mesh: TriMesh, axis: str) -> List[DensityRatio]:
    """
    Ratios ``area[i+1] / area[i]`` of consecutive cells in the two boundary strips.

    ``axis="x"`` walks the bottom and top cell rows, ``axis="z"`` the left and
    right cell columns. Ratios involving the first or last cell of a strip
    are left out.
    """
    axis = str(axis).lower()
    cells = cell_areas(mesh)
    if axis == "x":
        strips = (("bottom", cells[0, :]), ("top", cells[-1, :]))
    elif axis == "z":
        strips = (("left", cells[:, 0]), ("right", cells[:, -1]))
    else:
        raise InvalidArgument(f"axis must be 'x' or 'z' (got {axis!r})")
    report: List[DensityRatio] = []
    for name, strip in strips:
        for i in range(1, strip.shape[0] - 2):
            report.append(DensityRatio(i, float(strip[i + 1] / strip[i]), axis, name))
    return report


def ratio_bounds(sigma: float) -> Tuple[float, float]:
    """``[sigma / (sigma + 1), (sigma + 1) / sigma]``; unbounded for sigma = 0."""
    if sigma <= 0.0:
        return 0.0, float("inf")
    return sigma / (sigma + 1.0), (sigma + 1.0) / sigma


def ratio_extremes(report: List[DensityRatio]) -> Tuple[float, float]:
    if not report:
        return 1.0, 1.0
    values = [entry.ratio for entry in report]
    return min(values), max(values)


__all__ = [
    "DensityRatio",
    "RATIO_HEADER",
    "cell_areas",
    "density_ratio_report",
    "ratio_bounds",
    "ratio_extremes",
]
