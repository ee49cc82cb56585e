"""Monitor functions from recovered first and second derivatives."""

from __future__ import annotations

import logging
import math

import numpy as np

from filmpy.mesh.geometry import element_geometry_all
from filmpy.mesh.models import TriMesh
from filmpy.moving.models import MonitorKind, MonitorSpec

_LOGGER = logging.getLogger(__name__)


def recover_gradient(mesh: TriMesh, values: np.ndarray) -> np.ndarray:
    """Nodal gradient ``(N, 2)``: area-weighted average of the element gradients in each star."""
    areas, grads = element_geometry_all(mesh)
    element = np.einsum("tk,tkd->td", np.asarray(values, dtype=float)[mesh.tris], grads)
    weights = np.bincount(mesh.tris.ravel(), weights=np.repeat(areas, 3), minlength=mesh.n_nodes)
    out = np.empty((mesh.n_nodes, 2))
    for d in range(2):
        contrib = np.repeat(areas * element[:, d], 3)
        out[:, d] = np.bincount(mesh.tris.ravel(), weights=contrib, minlength=mesh.n_nodes) / weights
    return out


def recover_laplacian(mesh: TriMesh, values: np.ndarray) -> np.ndarray:
    """Nodal Laplacian from a second recovery pass on each gradient component."""
    grad = recover_gradient(mesh, values)
    return recover_gradient(mesh, grad[:, 0])[:, 0] + recover_gradient(mesh, grad[:, 1])[:, 1]


def monitor_component(mesh: TriMesh, u: np.ndarray, kind: MonitorKind) -> np.ndarray:
    """``|grad u|`` (arc-length) or ``|lap u|^(1/2)`` (curvature) at the nodes."""
    if MonitorKind.parse(kind) is MonitorKind.ARC_LENGTH:
        return np.linalg.norm(recover_gradient(mesh, u), axis=1)
    return np.sqrt(np.abs(recover_laplacian(mesh, u)))


def normalization(mesh: TriMesh, omega: np.ndarray) -> float:
    """Domain average of omega, centroid rule on its linear interpolant."""
    areas, _ = element_geometry_all(mesh)
    centroid = omega[mesh.tris].mean(axis=1)
    return math.fsum(areas * centroid) / math.fsum(areas)


def compute_monitor(mesh: TriMesh, u: np.ndarray, spec: MonitorSpec) -> np.ndarray:
    """
    ``M = (1 - kappa) gamma(u) + kappa omega`` at the nodes.

    Flat fields (``gamma(u) < floor_eps``) give ``M = 1``; otherwise M is
    floored at ``floor_eps * gamma(u)`` so it stays strictly positive.
    """
    omega = monitor_component(mesh, u, spec.kind)
    gamma = normalization(mesh, omega)
    if gamma < spec.floor_eps:
        _LOGGER.debug("Flat field (gamma=%.3e); using a constant monitor", gamma)
        return np.ones(mesh.n_nodes)
    monitor = (1.0 - spec.kappa) * gamma + spec.kappa * omega
    return np.maximum(monitor, spec.floor_eps * gamma)


__all__ = [
    "compute_monitor",
    "monitor_component",
    "normalization",
    "recover_gradient",
    "recover_laplacian",
]
