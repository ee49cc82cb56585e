"""Configuration and block-system models for the IMEX time stepper."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
import scipy.sparse as sp

from filmpy.assembly.boundary import replace_rows, zero_rows
from filmpy.assembly.models import SparseOperator
from filmpy.shared.errors import InvalidArgument


class InnerSolverKind(Enum):
    """How the preconditioner applies its block inverses."""
    DIRECT = "direct"
    SWEEPS = "sweeps"

    @classmethod
    def parse(cls, value) -> "InnerSolverKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        aliases = {"direct-sparse": "direct", "lu": "direct", "sgs": "sweeps",
                   "stationary-sweeps": "sweeps"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            raise InvalidArgument(f"Unknown inner solver '{value}' (use direct or sweeps)") from None


@dataclass(frozen=True)
class TimeStepperConfig:
    """Time step, Newton and Krylov settings for one IMEX step."""
    dt: float
    newton_tol: float = 1.0e-6
    newton_max_iter: int = 30
    krylov_tol: float = 1.0e-8
    krylov_restart: int = 60
    krylov_max_iter: int = 500
    inner_solver: InnerSolverKind = InnerSolverKind.DIRECT
    inner_sweeps: int = 4
    max_halvings: int = 3
    precondition: bool = True

    def __post_init__(self):
        object.__setattr__(self, "inner_solver", InnerSolverKind.parse(self.inner_solver))
        if not self.dt > 0.0:
            raise InvalidArgument(f"dt must be > 0 (got {self.dt})")
        for name in ("newton_tol", "krylov_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InvalidArgument(f"{name} must lie in (0, 1) (got {value})")
        for name in ("newton_max_iter", "krylov_restart", "krylov_max_iter", "inner_sweeps"):
            if int(getattr(self, name)) < 1:
                raise InvalidArgument(f"{name} must be >= 1 (got {getattr(self, name)})")
        if self.max_halvings < 0:
            raise InvalidArgument(f"max_halvings must be >= 0 (got {self.max_halvings})")

    def with_dt(self, dt: float) -> "TimeStepperConfig":
        return replace(self, dt=float(dt))


@dataclass
class BlockSystem:
    """
    Operators of one time step and the frozen quasi-Newton Jacobian

        J = [[M1,              dt K1(u^n)],
             [-beta M1 - gamma K2,  M1   ]]

    with Dirichlet rows of the first block row replaced by ``[I, 0]``.
    """
    mass: SparseOperator
    mobility_stiffness: SparseOperator
    stiffness: SparseOperator
    beta: float
    gamma: float
    dt: float
    dirichlet_mask: Optional[np.ndarray] = None
    convection: Optional[np.ndarray] = None
    boundary_values: Optional[np.ndarray] = None
    f0: Optional[np.ndarray] = None
    f1: Optional[np.ndarray] = None
    _jacobian: Optional[sp.csr_matrix] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = self.mass.dim
        for op in (self.mobility_stiffness, self.stiffness):
            if op.dim != n:
                raise InvalidArgument(f"Block {op.name or '?'} has dimension {op.dim}, expected {n}")
        if self.dirichlet_mask is None:
            self.dirichlet_mask = np.zeros(n, dtype=bool)
        self.dirichlet_mask = np.asarray(self.dirichlet_mask, dtype=bool)

    @property
    def n(self) -> int:
        return self.mass.dim

    def coupling(self) -> SparseOperator:
        """``beta M1 + gamma K2``, the negated (2,1) block."""
        return self.mass.scaled(self.beta).plus(self.stiffness, self.gamma, name="B")

    def pinned_mass(self) -> sp.csr_matrix:
        """(1,1) block: M1 with Dirichlet rows replaced by identity rows."""
        return replace_rows(self.mass.matrix, self.dirichlet_mask)

    def upper_block(self) -> sp.csr_matrix:
        """(1,2) block: dt K1(u^n) with Dirichlet rows zeroed."""
        return zero_rows(self.mobility_stiffness.matrix * self.dt, self.dirichlet_mask)

    def jacobian(self) -> sp.csr_matrix:
        if self._jacobian is None:
            self._jacobian = sp.bmat(
                [[self.pinned_mass(), self.upper_block()],
                 [-self.coupling().matrix, self.mass.matrix]],
                format="csr",
            )
        return self._jacobian

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.jacobian() @ x


__all__ = ["BlockSystem", "InnerSolverKind", "TimeStepperConfig"]
