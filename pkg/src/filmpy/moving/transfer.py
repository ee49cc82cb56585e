"""Solution transfer between successive physical meshes."""

from __future__ import annotations

import numpy as np

from filmpy.mesh.locate import evaluate_field
from filmpy.mesh.models import Frame, TriMesh


def interpolate_field(old_mesh: TriMesh, values: np.ndarray, new_positions: np.ndarray) -> np.ndarray:
    """Evaluate the old piecewise-linear field at the new node positions.

    Exact for globally linear fields and bounded by the old extrema; points
    slightly outside the old domain take the nearest element's clipped value.
    """
    return evaluate_field(old_mesh, values, new_positions, Frame.PHYSICAL)


__all__ = ["interpolate_field"]
