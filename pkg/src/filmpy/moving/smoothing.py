"""
Diffusive monitor smoothing on the fixed computational mesh.

The smoothing equation ``[I - div(D grad)] M~ = M`` with Neumann boundary
is discretized with linear elements on the unit square, lumped mass L and
the constant tensor D = diag(sigma_xi (sigma_xi + 1) dxi^2,
sigma_eta (sigma_eta + 1) deta^2). A few L-preconditioned CG steps from
``M~ = M`` keep ``sum(L M~)`` equal to ``sum(L M)`` at every iterate; a final
blend toward the mean restores ``min M <= M~ <= max M``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from filmpy.assembly.operators import assemble_stiffness, lumped_mass
from filmpy.mesh.generate import generate_rect_mesh
from filmpy.mesh.models import Frame, TriMesh
from filmpy.moving.models import SmoothingParams
from filmpy.shared.errors import InvalidArgument

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmoothingOperator:
    """``L + K_D`` on the computational mesh with its lumped mass diagonal."""
    matrix: sp.csr_matrix
    lumped: np.ndarray


@lru_cache(maxsize=16)
def smoothing_operator(nx: int, nz: int, sigma_xi: float, sigma_eta: float,
                       mirrored: bool = False) -> SmoothingOperator:
    """Assembled once per computational grid and parameter pair."""
    square = generate_rect_mesh(nx, nz, mirrored=mirrored)
    params = SmoothingParams(sigma_xi, sigma_eta)
    lumped = lumped_mass(square, Frame.COMPUTATIONAL)
    stiffness = assemble_stiffness(square, Frame.COMPUTATIONAL, tensor=params.diffusion(nx, nz))
    _LOGGER.debug("Assembled smoothing operator for %dx%d grid (sigma=%g, %g)",
                  nx, nz, sigma_xi, sigma_eta)
    return SmoothingOperator((sp.diags(lumped) + stiffness.matrix).tocsr(), lumped)


def _pcg(op: SmoothingOperator, rhs: np.ndarray, x: np.ndarray, max_iter: int, rel_tol: float) -> np.ndarray:
    r = rhs - op.matrix @ x
    reference = float(np.linalg.norm(rhs))
    if reference == 0.0 or np.linalg.norm(r) <= rel_tol * reference:
        return x
    z = r / op.lumped
    p = z.copy()
    rz = float(np.dot(r, z))
    for _ in range(max_iter):
        q = op.matrix @ p
        alpha = rz / float(np.dot(p, q))
        x = x + alpha * p
        r = r - alpha * q
        if np.linalg.norm(r) <= rel_tol * reference:
            break
        z = r / op.lumped
        rz_next = float(np.dot(r, z))
        p = z + (rz_next / rz) * p
        rz = rz_next
    return x


def _bounded_blend(x: np.ndarray, m: np.ndarray, weights: np.ndarray) -> np.ndarray:
    lo, hi = float(m.min()), float(m.max())
    mean = math.fsum(weights * m) / math.fsum(weights)
    mean = min(max(mean, lo), hi)
    dev = x - mean
    theta = 1.0
    up = dev > 0.0
    if np.any(up):
        theta = min(theta, float(np.min((hi - mean) / dev[up])))
    down = dev < 0.0
    if np.any(down):
        theta = min(theta, float(np.min((mean - lo) / -dev[down])))
    if theta >= 1.0:
        return x
    return mean + max(theta, 0.0) * dev


def smooth_monitor(mesh: TriMesh, monitor: np.ndarray, p: SmoothingParams,
                   nx: int = None, nz: int = None) -> np.ndarray:
    """Smoothed monitor ``M~`` at the mesh nodes (strictly positive for positive input)."""
    nx = mesh.nx if nx is None else nx
    nz = mesh.nz if nz is None else nz
    m = np.asarray(monitor, dtype=float)
    if m.shape != ((nx + 1) * (nz + 1),):
        raise InvalidArgument(f"Monitor has shape {m.shape}, expected ({(nx + 1) * (nz + 1)},)")
    if p.sigma_xi == 0.0 and p.sigma_eta == 0.0:
        return m.copy()
    mirrored = mesh.mirrored and nx == mesh.nx
    op = smoothing_operator(nx, nz, float(p.sigma_xi), float(p.sigma_eta), mirrored)
    x = _pcg(op, op.lumped * m, m.copy(), p.cg_max_iter, p.cg_rel_tol)
    x = _bounded_blend(x, m, op.lumped)
    floor = float(m.min())
    if floor > 0.0:
        x = np.maximum(x, floor)
    return x


__all__ = ["SmoothingOperator", "smooth_monitor", "smoothing_operator"]
