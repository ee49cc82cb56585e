"""
Mass, stiffness and convection assembly for linear triangles.

Every routine builds per-element dense blocks in one vectorized pass and
scatters them as (row, col, value) triplets; duplicates are summed when the
operator is finalized to compressed-row form.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from filmpy.assembly.models import PhysicsModel, SparseOperator
from filmpy.assembly.quadrature import QuadratureRule, element_integrals
from filmpy.mesh.geometry import element_geometry_all
from filmpy.mesh.models import Frame, TriMesh
from filmpy.shared.errors import AssemblyError, InvalidArgument

_LOGGER = logging.getLogger(__name__)

_LOCAL_MASS = (np.ones((3, 3)) + np.eye(3)) / 12.0


def _scatter(mesh: TriMesh, blocks: np.ndarray, symmetric: bool, name: str) -> SparseOperator:
    rows = np.repeat(mesh.tris, 3, axis=1)
    cols = np.tile(mesh.tris, (1, 3))
    return SparseOperator.from_triplets(
        rows, cols, blocks.reshape(-1, 9), mesh.n_nodes, symmetric, name
    )


def assemble_mass(mesh: TriMesh, frame: Frame = Frame.PHYSICAL) -> SparseOperator:
    """Consistent mass matrix ``M1[i, j] = ∫ phi_i phi_j``."""
    areas, _ = element_geometry_all(mesh, frame)
    blocks = areas[:, np.newaxis, np.newaxis] * _LOCAL_MASS
    return _scatter(mesh, blocks, True, "M1")


def assemble_stiffness(mesh: TriMesh, frame: Frame = Frame.PHYSICAL,
                       tensor: Optional[Sequence[float]] = None) -> SparseOperator:
    """Stiffness ``K2[i, j] = ∫ grad phi_i . D grad phi_j``.

    ``tensor`` is an optional constant diagonal ``(d_x, d_z)``; the default is
    the identity.
    """
    areas, grads = element_geometry_all(mesh, frame)
    if tensor is None:
        scaled = grads
    else:
        diag = np.asarray(tensor, dtype=float)
        if diag.shape != (2,) or np.any(diag < 0.0):
            raise InvalidArgument(f"Diffusion tensor must be two nonnegative reals, got {tensor}")
        scaled = grads * diag
    blocks = areas[:, np.newaxis, np.newaxis] * np.einsum("tid,tjd->tij", scaled, grads)
    return _scatter(mesh, blocks, True, "K2")


def assemble_weighted_stiffness(
    mesh: TriMesh,
    coeff: np.ndarray,
    transform: Optional[Callable] = None,
    rule: QuadratureRule = QuadratureRule.MIDPOINT,
    frame: Frame = Frame.PHYSICAL,
    name: str = "K1",
) -> SparseOperator:
    """Weighted stiffness ``∫ transform(c_h) grad phi_i . grad phi_j``.

    ``c_h`` is the linear interpolant of the nodal ``coeff``; the transform
    is sampled at the quadrature points of ``rule``.

    Raises:
        InvalidArgument: ``coeff`` has the wrong length or non-finite entries.
        AssemblyError: The transformed coefficient is nonpositive somewhere.
    """
    coeff = np.asarray(coeff, dtype=float)
    if coeff.shape != (mesh.n_nodes,):
        raise InvalidArgument(f"Coefficient has shape {coeff.shape}, expected ({mesh.n_nodes},)")
    if not np.all(np.isfinite(coeff)):
        raise InvalidArgument("Coefficient contains non-finite values")
    rule = QuadratureRule(rule)
    areas, grads = element_geometry_all(mesh, frame)
    integrals, at_points = element_integrals(coeff[mesh.tris], areas, rule, transform)
    bad = np.flatnonzero(~np.all(at_points > 0.0, axis=1))
    if bad.size:
        element = int(bad[0])
        raise AssemblyError(element, float(at_points[element].min()))
    blocks = integrals[:, np.newaxis, np.newaxis] * np.einsum("tid,tjd->tij", grads, grads)
    return _scatter(mesh, blocks, True, name)


def assemble_convection(mesh: TriMesh, u: np.ndarray, model: PhysicsModel,
                        rule: QuadratureRule = QuadratureRule.MIDPOINT) -> np.ndarray:
    """Convection vector ``F̄[i] = ∫ F̂(u_h) d(phi_i)/dz``."""
    u = np.asarray(u, dtype=float)
    if u.shape != (mesh.n_nodes,):
        raise InvalidArgument(f"Field has shape {u.shape}, expected ({mesh.n_nodes},)")
    if not np.all(np.isfinite(u)):
        raise InvalidArgument("Field contains non-finite values")
    areas, grads = element_geometry_all(mesh)
    integrals, _ = element_integrals(u[mesh.tris], areas, QuadratureRule(rule), model.convective_flux)
    local = integrals[:, np.newaxis] * grads[:, :, 1]
    return np.bincount(mesh.tris.ravel(), weights=local.ravel(), minlength=mesh.n_nodes)


def lumped_mass(mesh: TriMesh, frame: Frame = Frame.PHYSICAL) -> np.ndarray:
    """Row sums of the consistent mass matrix (one third of each adjacent area)."""
    areas, _ = element_geometry_all(mesh, frame)
    return np.bincount(
        mesh.tris.ravel(), weights=np.repeat(areas / 3.0, 3), minlength=mesh.n_nodes
    )


__all__ = [
    "assemble_convection",
    "assemble_mass",
    "assemble_stiffness",
    "assemble_weighted_stiffness",
    "lumped_mass",
]
