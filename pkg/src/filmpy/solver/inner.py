"""
Approximate block inverses used inside the Schur preconditioner.

``DirectInnerSolver`` factorizes once per time step; ``SweepInnerSolver``
applies a fixed number of symmetric Gauss-Seidel sweeps from a zero guess.
Both expose ``solve(rhs)``.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu, spsolve_triangular

from filmpy.shared.errors import InnerSolverError
from filmpy.solver.models import InnerSolverKind


class DirectInnerSolver:
    """Sparse LU of one block."""

    def __init__(self, matrix: sp.spmatrix, block: str):
        self.block = block
        try:
            self._lu = splu(sp.csc_matrix(matrix, dtype=float))
        except RuntimeError as exc:
            raise InnerSolverError(block, str(exc)) from exc

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        x = self._lu.solve(np.asarray(rhs, dtype=float))
        if not np.all(np.isfinite(x)):
            raise InnerSolverError(self.block, "non-finite solution")
        return x


class SweepInnerSolver:
    """``sweeps`` forward+backward Gauss-Seidel passes."""

    def __init__(self, matrix: sp.spmatrix, block: str, sweeps: int = 4):
        self.block = block
        self.sweeps = int(sweeps)
        self.matrix = sp.csr_matrix(matrix, dtype=float)
        diag = self.matrix.diagonal()
        if np.any(diag == 0.0) or not np.all(np.isfinite(diag)):
            raise InnerSolverError(block, "zero or non-finite diagonal entry")
        self._lower = sp.tril(self.matrix, format="csr")
        self._upper = sp.triu(self.matrix, format="csr")

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        x = np.zeros_like(rhs)
        for _ in range(self.sweeps):
            x = x + spsolve_triangular(self._lower, rhs - self.matrix @ x, lower=True)
            x = x + spsolve_triangular(self._upper, rhs - self.matrix @ x, lower=False)
        if not np.all(np.isfinite(x)):
            raise InnerSolverError(self.block, "sweeps diverged")
        return x


def make_inner_solver(matrix: sp.spmatrix, block: str,
                      kind: InnerSolverKind = InnerSolverKind.DIRECT, sweeps: int = 4):
    kind = InnerSolverKind.parse(kind)
    if kind is InnerSolverKind.SWEEPS:
        return SweepInnerSolver(matrix, block, sweeps)
    return DirectInnerSolver(matrix, block)


__all__ = ["DirectInnerSolver", "SweepInnerSolver", "make_inner_solver"]
