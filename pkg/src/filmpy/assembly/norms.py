"""Error norms and integrals of nodal fields."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from filmpy.assembly.quadrature import QuadratureRule, nodal_to_points, sample_points
from filmpy.mesh.geometry import element_geometry_all
from filmpy.mesh.models import TriMesh


def l2_error(mesh: TriMesh, u: np.ndarray, exact: Callable,
             rule: QuadratureRule = QuadratureRule.MIDPOINT) -> float:
    """``||u_h - exact||_L2`` over the physical mesh.

    ``exact`` is a vectorized ``f(x, z)``; constants are broadcast.
    """
    rule = QuadratureRule(rule)
    areas, _ = element_geometry_all(mesh)
    pts = sample_points(mesh.nodes_x[mesh.tris], rule)
    uh = nodal_to_points(np.asarray(u, dtype=float)[mesh.tris], rule)
    ex = np.broadcast_to(np.asarray(exact(pts[..., 0], pts[..., 1]), dtype=float), uh.shape)
    squared = areas * (((uh - ex) ** 2) @ rule.weights)
    return math.sqrt(max(math.fsum(squared), 0.0))


def integrate(mesh: TriMesh, u: np.ndarray) -> float:
    """``∫ u_h``, equal to ``1^T M1 u`` for linear elements."""
    areas, _ = element_geometry_all(mesh)
    local = np.asarray(u, dtype=float)[mesh.tris].mean(axis=1)
    return math.fsum(areas * local)


__all__ = ["integrate", "l2_error"]
