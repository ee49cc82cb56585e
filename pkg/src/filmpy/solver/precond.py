"""Block lower-triangular preconditioner with a factorized Schur complement."""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np

from filmpy.assembly.boundary import zero_rows
from filmpy.solver.inner import make_inner_solver
from filmpy.solver.models import BlockSystem, InnerSolverKind, TimeStepperConfig

_LOGGER = logging.getLogger(__name__)


class SchurPreconditioner:
    """
    Applies the inverse of ``P = [[A, 0], [-B, S]]`` where

        A = M1 (Dirichlet rows pinned),  B = beta M1 + gamma K2,
        S = S1 M1^-1 S2,  S1 = M1 + sqrt(dt) B,  S2 = M1 + sqrt(dt) K1

    so ``x0 = A^-1 f0`` and ``x1 = S2^-1 M1 S1^-1 (f1 + B x0)``.
    """

    def __init__(self, system: BlockSystem, kind: InnerSolverKind = InnerSolverKind.DIRECT,
                 sweeps: int = 4):
        root = math.sqrt(system.dt)
        self.system = system
        self.n = system.n
        self._coupling = system.coupling().matrix
        self._mass = system.mass.matrix
        s1 = self._mass + root * self._coupling
        # K1 rows of Dirichlet nodes do not enter the Jacobian
        s2 = self._mass + zero_rows(root * system.mobility_stiffness.matrix, system.dirichlet_mask)
        self._a = make_inner_solver(system.pinned_mass(), "M1", kind, sweeps)
        self._s1 = make_inner_solver(s1, "S1", kind, sweeps)
        self._s2 = make_inner_solver(s2, "S2", kind, sweeps)
        _LOGGER.debug("Schur preconditioner ready (n=%d, inner=%s)", self.n, InnerSolverKind.parse(kind).value)

    def apply_blocks(self, f0: np.ndarray, f1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x0 = self._a.solve(f0)
        y = self._s1.solve(f1 + self._coupling @ x0)
        x1 = self._s2.solve(self._mass @ y)
        return x0, x1

    def __call__(self, f: np.ndarray) -> np.ndarray:
        x0, x1 = self.apply_blocks(f[: self.n], f[self.n:])
        return np.concatenate([x0, x1])


def apply_schur_preconditioner(
    system: BlockSystem,
    rhs: Tuple[np.ndarray, np.ndarray],
    cfg: Optional[TimeStepperConfig] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """One-shot application of :class:`SchurPreconditioner` to ``(f0, f1)``."""
    kind = cfg.inner_solver if cfg is not None else InnerSolverKind.DIRECT
    sweeps = cfg.inner_sweeps if cfg is not None else 4
    f0, f1 = rhs
    return SchurPreconditioner(system, kind, sweeps).apply_blocks(
        np.asarray(f0, dtype=float), np.asarray(f1, dtype=float)
    )


__all__ = ["SchurPreconditioner", "apply_schur_preconditioner"]
