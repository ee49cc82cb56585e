"""Boundary equidistribution and the scalar harmonic map ξ(x)."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from filmpy.assembly.operators import assemble_weighted_stiffness
from filmpy.assembly.quadrature import QuadratureRule
from filmpy.mesh.models import Side, TriMesh
from filmpy.shared.errors import InnerSolverError, InvalidArgument

# (side, computational component that varies along it, physical component along it)
_SIDE_AXES = (
    (Side.BOTTOM, 0, 0),
    (Side.TOP, 0, 0),
    (Side.LEFT, 1, 1),
    (Side.RIGHT, 1, 1),
)


def reciprocal(m):
    return 1.0 / m


def equidistribute(positions: np.ndarray, monitor: np.ndarray) -> np.ndarray:
    """Normalized cumulative trapezoid integral of ``monitor`` over ordered ``positions``."""
    steps = np.diff(positions) * 0.5 * (monitor[1:] + monitor[:-1])
    cumulative = np.concatenate([[0.0], np.cumsum(steps)])
    if cumulative[-1] <= 0.0:
        raise InvalidArgument("Monitor trace must be positive along each side")
    out = cumulative / cumulative[-1]
    out[-1] = 1.0
    return out


def redistribute_boundary(mesh: TriMesh, monitor: np.ndarray) -> np.ndarray:
    """Computational coordinates ``(N, 2)`` with boundary entries equidistributed.

    Along each side the varying computational coordinate is proportional to
    the running integral of the monitor trace, so the 1D map satisfies
    ``xi' ∝ M``; corners stay pinned. Interior rows are copied from
    ``nodes_xi`` and are not meaningful.
    """
    monitor = np.asarray(monitor, dtype=float)
    xi_b = mesh.nodes_xi.copy()
    for side, component, along in _SIDE_AXES:
        nodes = mesh.side_nodes(side)
        xi_b[nodes, component] = equidistribute(mesh.nodes_x[nodes, along], monitor[nodes])
    return xi_b


def solve_harmonic_map(mesh: TriMesh, monitor: np.ndarray, xi_b: np.ndarray) -> np.ndarray:
    """
    Solve ``div(M~^-1 grad xi) = 0`` on the physical mesh for both components.

    The coefficient ``1 / M~`` is sampled at element centroids; boundary
    rows take ``xi_b``. The reduced interior system is symmetric positive
    definite and solved directly.
    """
    monitor = np.asarray(monitor, dtype=float)
    if not np.all(monitor > 0.0):
        raise InvalidArgument("Harmonic map needs a strictly positive monitor")
    stiffness = assemble_weighted_stiffness(
        mesh, monitor, reciprocal, rule=QuadratureRule.CENTROID, name="harmonic"
    ).matrix
    boundary = mesh.boundary_mask
    interior = np.flatnonzero(~boundary)
    fixed = np.flatnonzero(boundary)
    xi = np.array(xi_b, dtype=float, copy=True)
    if interior.size == 0:
        return xi
    k_ii = sp.csc_matrix(stiffness[interior][:, interior])
    k_ib = stiffness[interior][:, fixed]
    try:
        lu = splu(k_ii)
    except RuntimeError as exc:
        raise InnerSolverError("harmonic", str(exc)) from exc
    rhs = -(k_ib @ xi[fixed])
    xi[interior] = lu.solve(np.ascontiguousarray(rhs))
    return xi


__all__ = ["equidistribute", "redistribute_boundary", "solve_harmonic_map"]
