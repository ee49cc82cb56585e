"""Diagnostics extracted from 2D solutions: centerline, fronts, plateaus, undershoots."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from filmpy.assembly.models import PhysicsModel
from filmpy.mesh.locate import evaluate_field
from filmpy.mesh.models import TriMesh

CENTERLINE_POINTS = 1000
PLATEAU_SLOPE = 0.02
PLATEAU_MIN_HEIGHT = 0.4
FINGER_COLUMNS = 31

CENTERLINE_HEADER = ("z", "u", "du")


def sample_line(mesh: TriMesh, values: np.ndarray, x: float, n: int = CENTERLINE_POINTS) -> Tuple[np.ndarray, np.ndarray]:
    """Field values on a uniform z-grid of ``n`` points along the vertical line at ``x``."""
    b = mesh.bounds
    z = np.linspace(b.z0, b.z1, n)
    points = np.column_stack([np.full(n, float(x)), z])
    return z, evaluate_field(mesh, values, points)


def centerline(mesh: TriMesh, u: np.ndarray, n: int = CENTERLINE_POINTS) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(z, u, u_z)`` at mid-domain x; u_z by central differences."""
    b = mesh.bounds
    z, values = sample_line(mesh, u, 0.5 * (b.x0 + b.x1), n)
    return z, values, np.gradient(values, z)


def front_position(z: np.ndarray, u: np.ndarray, level: float) -> float:
    """Largest z where ``u`` crosses ``level``, by linear interpolation (nan if none)."""
    shifted = np.asarray(u, dtype=float) - level
    crossings = np.nonzero(shifted[:-1] * shifted[1:] <= 0.0)[0]
    crossings = [i for i in crossings if shifted[i] != shifted[i + 1]]
    if not crossings:
        return float("nan")
    i = crossings[-1]
    frac = shifted[i] / (shifted[i] - shifted[i + 1])
    return float(z[i] + frac * (z[i + 1] - z[i]))


def plateau_value(z: np.ndarray, u: np.ndarray, slope_tol: float = PLATEAU_SLOPE,
                  min_height: float = PLATEAU_MIN_HEIGHT) -> float:
    """Median of ``u`` over flat samples above ``min_height`` (nan if none)."""
    u = np.asarray(u, dtype=float)
    slope = np.gradient(u, z)
    flat = (np.abs(slope) < slope_tol) & (u > min_height)
    if not np.any(flat):
        return float("nan")
    return float(np.median(u[flat]))


def finger_fronts(mesh: TriMesh, u: np.ndarray, level: float, columns: int = FINGER_COLUMNS,
                  n: int = CENTERLINE_POINTS) -> Tuple[np.ndarray, np.ndarray]:
    """Front position ``z(x)`` on ``columns`` vertical lines across the domain."""
    b = mesh.bounds
    xs = np.linspace(b.x0, b.x1, columns)
    fronts = np.array([front_position(*sample_line(mesh, u, x, n), level) for x in xs])
    return xs, fronts


def tip_and_root(mesh: TriMesh, u: np.ndarray, level: float) -> Tuple[float, float]:
    """Largest and smallest front position over x."""
    _, fronts = finger_fronts(mesh, u, level)
    if np.all(np.isnan(fronts)):
        return float("nan"), float("nan")
    return float(np.nanmax(fronts)), float(np.nanmin(fronts))


def oscillation_indicator(u: np.ndarray, reference: float = 0.0) -> float:
    """Largest undershoot of ``u`` below ``reference`` (0 when there is none)."""
    return max(0.0, float(reference - np.min(u)))


def min_edge_length(mesh: TriMesh) -> float:
    pts = mesh.nodes_x[mesh.tris]
    edges = pts - np.roll(pts, 1, axis=1)
    return float(np.sqrt((edges ** 2).sum(axis=2)).min())


def cfl_number(model: PhysicsModel, u: np.ndarray, dt: float, mesh: TriMesh) -> float:
    """``max |F'(u) - s| dt / h_min`` on the current mesh."""
    return float(np.max(np.abs(model.characteristic_speed(u))) * dt / min_edge_length(mesh))


def symmetry_error(mesh: TriMesh, u: np.ndarray) -> float:
    """Max ``|u(x, z) - u(x0 + x1 - x, z)|`` over the nodes."""
    b = mesh.bounds
    mirrored = mesh.nodes_x.copy()
    mirrored[:, 0] = b.x0 + b.x1 - mirrored[:, 0]
    reflected = evaluate_field(mesh, u, mirrored)
    return float(np.max(np.abs(reflected - u)))


__all__ = [
    "CENTERLINE_HEADER",
    "centerline",
    "cfl_number",
    "finger_fronts",
    "front_position",
    "min_edge_length",
    "oscillation_indicator",
    "plateau_value",
    "sample_line",
    "symmetry_error",
    "tip_and_root",
]
