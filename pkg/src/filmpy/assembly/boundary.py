"""Dirichlet imposition by row replacement."""

from __future__ import annotations

from typing import Callable, Tuple, Union

import numpy as np
import scipy.sparse as sp

from filmpy.assembly.models import SparseOperator
from filmpy.mesh.models import TriMesh

BoundaryValues = Union[float, np.ndarray, Callable]


def dirichlet_values(mesh: TriMesh, values: BoundaryValues) -> np.ndarray:
    """Nodal boundary data as a full-length vector (zero off the Dirichlet set).

    ``values`` may be a constant, a nodal vector or a vectorized ``f(x, z)``.
    """
    mask = mesh.dirichlet_mask
    out = np.zeros(mesh.n_nodes)
    if callable(values):
        pts = mesh.nodes_x[mask]
        out[mask] = np.broadcast_to(
            np.asarray(values(pts[:, 0], pts[:, 1]), dtype=float), (pts.shape[0],)
        )
    else:
        data = np.asarray(values, dtype=float)
        out[mask] = data[mask] if data.ndim else float(data)
    return out


def replace_rows(matrix: sp.spmatrix, mask: np.ndarray, diagonal: float = 1.0) -> sp.csr_matrix:
    """Zero the masked rows of ``matrix`` and put ``diagonal`` on their diagonal."""
    mask = np.asarray(mask, dtype=bool)
    keep = sp.diags((~mask).astype(float))
    pinned = sp.diags(mask.astype(float) * diagonal)
    return (keep @ sp.csr_matrix(matrix) + pinned).tocsr()


def zero_rows(matrix: sp.spmatrix, mask: np.ndarray) -> sp.csr_matrix:
    return replace_rows(matrix, mask, 0.0)


def impose_dirichlet(
    op: SparseOperator,
    rhs: np.ndarray,
    mesh: TriMesh,
    values: BoundaryValues,
) -> Tuple[SparseOperator, np.ndarray]:
    """Replace Dirichlet rows of ``op`` by identity rows and set ``rhs`` there.

    Neumann sides need nothing; they are natural in the weak form.
    """
    mask = mesh.dirichlet_mask
    rhs = np.array(rhs, dtype=float, copy=True)
    if not mask.any():
        return op, rhs
    rhs[mask] = dirichlet_values(mesh, values)[mask]
    return SparseOperator(replace_rows(op.matrix, mask), False, op.name), rhs


__all__ = ["dirichlet_values", "impose_dirichlet", "replace_rows", "zero_rows"]
