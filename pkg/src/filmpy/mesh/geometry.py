"""Per-element geometry of linear triangles."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from filmpy.mesh.models import Frame, TriMesh
from filmpy.shared.errors import DegenerateElement


def element_geometry(mesh: TriMesh, t: int, frame: Frame = Frame.PHYSICAL) -> Tuple[float, np.ndarray]:
    """Area and constant barycentric-basis gradients of triangle ``t``.

    Returns:
        (area, grads) where ``grads[k]`` is the gradient of the basis
        function attached to local vertex ``k``.

    Raises:
        DegenerateElement: The triangle is inverted or flat.
    """
    if not 0 <= t < mesh.n_tris:
        raise IndexError(f"Triangle index {t} out of range (0..{mesh.n_tris - 1})")
    pts = mesh.coords(frame)[mesh.tris[t]]
    areas, grads = triangle_gradients(pts[np.newaxis])
    if areas[0] <= 0.0:
        raise DegenerateElement(t, float(areas[0]), Frame(frame).value)
    return float(areas[0]), grads[0]


def element_geometry_all(mesh: TriMesh, frame: Frame = Frame.PHYSICAL) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`element_geometry` over every triangle.

    Returns:
        areas of shape (T,), gradients of shape (T, 3, 2)
    """
    pts = mesh.coords(frame)[mesh.tris]
    areas, grads = triangle_gradients(pts)
    bad = np.flatnonzero(~(areas > 0.0))
    if bad.size:
        raise DegenerateElement(int(bad[0]), float(areas[bad[0]]), Frame(frame).value)
    return areas, grads


def triangle_gradients(pts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Signed areas and basis gradients for a stack of triangles ``(T, 3, 2)``.

    No positivity check; callers decide how to treat inverted elements.
    """
    x = pts[..., 0]
    y = pts[..., 1]
    twice = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])
    areas = 0.5 * twice
    grads = np.empty(pts.shape, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        grads[:, 0, 0] = (y[:, 1] - y[:, 2]) / twice
        grads[:, 0, 1] = (x[:, 2] - x[:, 1]) / twice
        grads[:, 1, 0] = (y[:, 2] - y[:, 0]) / twice
        grads[:, 1, 1] = (x[:, 0] - x[:, 2]) / twice
        grads[:, 2, 0] = (y[:, 0] - y[:, 1]) / twice
        grads[:, 2, 1] = (x[:, 1] - x[:, 0]) / twice
    return areas, grads


def element_gradients_of(mesh: TriMesh, values: np.ndarray, frame: Frame = Frame.PHYSICAL) -> np.ndarray:
    """Elementwise-constant gradient ``(T, 2)`` of a nodal linear field."""
    _, grads = element_geometry_all(mesh, frame)
    local = np.asarray(values, dtype=float)[mesh.tris]
    return np.einsum("tk,tkd->td", local, grads)


__all__ = [
    "element_geometry",
    "element_geometry_all",
    "element_gradients_of",
    "triangle_gradients",
]
