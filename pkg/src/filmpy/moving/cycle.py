"""One redistribution cycle: monitor, smoothing, harmonic map, guarded motion, transfer."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from filmpy.assembly.models import FieldState
from filmpy.mesh.generate import signed_areas
from filmpy.mesh.models import BoundaryTag, Frame, TriMesh
from filmpy.moving.harmonic import redistribute_boundary, solve_harmonic_map
from filmpy.moving.models import MonitorSpec, MovingMeshParams, SmoothingParams
from filmpy.moving.monitor import compute_monitor
from filmpy.moving.smoothing import smooth_monitor
from filmpy.moving.transfer import interpolate_field
from filmpy.shared.errors import DegenerateElement

_LOGGER = logging.getLogger(__name__)

Sampler = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass
class CycleReport:
    """Outcome of :func:`mesh_move_cycle`."""
    iterations: int
    delta_xi: float
    min_area: float
    tau: float
    converged: bool
    frozen: bool = False


def nodal_jacobians(mesh: TriMesh, xi: np.ndarray) -> np.ndarray:
    """``dx/dxi`` per node ``(N, 2, 2)``, area-weighted over the element star.

    Element maps are the affine maps taking the ``xi`` triangles onto the
    current physical triangles.
    """
    x_pts = mesh.nodes_x[mesh.tris]
    xi_pts = xi[mesh.tris]
    dx = np.stack([x_pts[:, 1] - x_pts[:, 0], x_pts[:, 2] - x_pts[:, 0]], axis=2)
    dxi = np.stack([xi_pts[:, 1] - xi_pts[:, 0], xi_pts[:, 2] - xi_pts[:, 0]], axis=2)
    det = dxi[:, 0, 0] * dxi[:, 1, 1] - dxi[:, 0, 1] * dxi[:, 1, 0]
    weights = 0.5 * np.abs(det)
    safe = np.where(det == 0.0, 1.0, det)
    inv = np.empty_like(dxi)
    inv[:, 0, 0] = dxi[:, 1, 1] / safe
    inv[:, 0, 1] = -dxi[:, 0, 1] / safe
    inv[:, 1, 0] = -dxi[:, 1, 0] / safe
    inv[:, 1, 1] = dxi[:, 0, 0] / safe
    element = np.einsum("tij,tjk->tik", dx, inv)
    element[det == 0.0] = 0.0

    flat = mesh.tris.ravel()
    total = np.bincount(flat, weights=np.repeat(weights, 3), minlength=mesh.n_nodes)
    total = np.where(total > 0.0, total, 1.0)
    out = np.empty((mesh.n_nodes, 2, 2))
    for i in range(2):
        for j in range(2):
            contrib = np.repeat(weights * element[:, i, j], 3)
            out[:, i, j] = np.bincount(flat, weights=contrib, minlength=mesh.n_nodes) / total
    return out


def physical_displacement(mesh: TriMesh, xi: np.ndarray, delta_xi: np.ndarray) -> np.ndarray:
    """``dx = (dx/dxi) dxi`` with normal components removed on the boundary."""
    dx = np.einsum("nij,nj->ni", nodal_jacobians(mesh, xi), delta_xi)
    tag = mesh.boundary_tag
    dx[(tag == BoundaryTag.LEFT) | (tag == BoundaryTag.RIGHT), 0] = 0.0
    dx[(tag == BoundaryTag.BOTTOM) | (tag == BoundaryTag.TOP), 1] = 0.0
    dx[tag == BoundaryTag.CORNER] = 0.0
    return dx


def guarded_move(mesh: TriMesh, dx: np.ndarray, mm: MovingMeshParams) -> Tuple[Optional[np.ndarray], float]:
    """Largest ``tau = tau_initial / 2^k >= tau_min`` keeping every area above the guard.

    Returns ``(None, tau)`` when no admissible step exists.
    """
    before = signed_areas(mesh)
    tau = mm.tau_initial
    while tau >= mm.tau_min:
        candidate = mesh.nodes_x + tau * dx
        after = _areas_of(mesh, candidate)
        if np.all(after >= mm.area_guard * before):
            return candidate, tau
        tau *= 0.5
    return None, tau


def _areas_of(mesh: TriMesh, nodes: np.ndarray) -> np.ndarray:
    pts = nodes[mesh.tris]
    e1 = pts[:, 1] - pts[:, 0]
    e2 = pts[:, 2] - pts[:, 0]
    return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def mesh_move_cycle(
    mesh: TriMesh,
    state: FieldState,
    spec: MonitorSpec,
    p: SmoothingParams,
    mm: MovingMeshParams,
    sampler: Optional[Sampler] = None,
) -> Tuple[TriMesh, FieldState, CycleReport]:
    """
    Redistribute the physical nodes of ``mesh`` (in place) for ``state.u``.

    Each outer iteration computes and smooths the monitor, solves the
    harmonic map for ``xi^n``, stops when ``||xi^0 - xi^n||_inf`` is below
    tolerance, and otherwise moves the nodes by ``tau dx`` and transfers u
    and w. ``sampler`` re-evaluates u analytically instead of interpolating.
    Dirichlet values are restored on moved boundary nodes.

    A step size below ``mm.tau_min`` freezes the mesh for this call and
    logs a warning; the simulation can continue.
    """
    state.check(mesh.n_nodes)
    tol = mm.tolerance_for(mesh)
    u, w = state.u.copy(), state.w.copy()
    mask = mesh.dirichlet_mask
    report = CycleReport(0, 0.0, float(signed_areas(mesh).min()), 0.0, False)

    for _ in range(mm.max_outer_iter):
        monitor = smooth_monitor(mesh, compute_monitor(mesh, u, spec), p)
        xi_b = redistribute_boundary(mesh, monitor)
        xi_n = solve_harmonic_map(mesh, monitor, xi_b)
        delta_xi = mesh.nodes_xi - xi_n
        report.delta_xi = float(np.max(np.abs(delta_xi)))
        if report.delta_xi < tol:
            report.converged = True
            break
        dx = physical_displacement(mesh, xi_n, delta_xi)
        new_nodes, tau = guarded_move(mesh, dx, mm)
        if new_nodes is None:
            _LOGGER.warning(
                "Mesh tangling: step size fell below %g at t=%g; mesh frozen for this step",
                mm.tau_min, state.t,
            )
            report.frozen = True
            break
        old = mesh.copy()
        mesh.move_to(new_nodes)
        report.iterations += 1
        report.tau = tau
        u = sampler(new_nodes[:, 0], new_nodes[:, 1]) if sampler is not None \
            else interpolate_field(old, u, new_nodes)
        u = np.asarray(u, dtype=float)
        w = interpolate_field(old, w, new_nodes)
        u[mask] = state.u[mask]

    areas = signed_areas(mesh, Frame.PHYSICAL)
    report.min_area = float(areas.min())
    if report.min_area <= 0.0:
        bad = int(np.argmin(areas))
        raise DegenerateElement(bad, report.min_area)
    _LOGGER.debug(
        "Mesh cycle at t=%g: outer=%d |dxi|=%.3e min_area=%.3e tau=%g",
        state.t, report.iterations, report.delta_xi, report.min_area, report.tau,
    )
    return mesh, FieldState(u, w, state.t), report


__all__ = [
    "CycleReport",
    "guarded_move",
    "mesh_move_cycle",
    "nodal_jacobians",
    "physical_displacement",
]
