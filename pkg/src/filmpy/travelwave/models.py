"""Problem and profile models of the 1D traveling-wave oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from filmpy.assembly.models import PhysicsModel
from filmpy.shared.errors import InvalidArgument

PROFILE_HEADER = ("zeta", "u", "du", "d2u")
PHASE_HEADER = ("u", "du")


@dataclass(frozen=True)
class TWProblem:
    """
    Traveling wave ``u(zeta)`` connecting ``u_minus`` (left) to ``u_plus`` (right).

    The frame speed stored in ``model`` is ignored; the speed is passed to
    the solver explicitly.
    """
    model: PhysicsModel
    u_minus: float
    u_plus: float
    interval: Tuple[float, float] = (-2.5, 2.5)
    n_ode: int = 2000
    newton_tol: float = 1e-8
    newton_max: int = 50
    guess_width: float = 0.1
    guess_center: float = 0.0

    def __post_init__(self):
        if self.u_minus == self.u_plus:
            raise InvalidArgument("u_minus and u_plus must differ")
        lo, hi = (float(v) for v in self.interval)
        if not hi > lo:
            raise InvalidArgument(f"Empty interval {self.interval}")
        object.__setattr__(self, "interval", (lo, hi))
        if self.n_ode < 100:
            raise InvalidArgument(f"n_ode must be >= 100 (got {self.n_ode})")
        if not 0.0 < self.newton_tol < 1.0 or self.newton_max < 1:
            raise InvalidArgument("newton_tol must lie in (0, 1) and newton_max be >= 1")
        if not self.guess_width > 0.0:
            raise InvalidArgument(f"guess_width must be > 0 (got {self.guess_width})")
        states = np.linspace(min(self.u_minus, self.u_plus), max(self.u_minus, self.u_plus), 101)
        if not np.all(np.asarray(self.model.mobility(states)) > 0.0):
            raise InvalidArgument("Mobility must be positive between the two states")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.u_minus + self.u_plus)

    def grid(self) -> np.ndarray:
        return np.linspace(self.interval[0], self.interval[1], self.n_ode + 1)


@dataclass
class TWProfile:
    """Sampled profile with derivative samples and solver diagnostics."""
    zeta: np.ndarray
    u: np.ndarray
    du: np.ndarray
    d2u: np.ndarray
    speed: float
    bordering: float = 0.0
    iterations: int = 0
    residual: float = 0.0

    def rows(self):
        return zip(self.zeta, self.u, self.du, self.d2u)

    def shifted(self, delta: float) -> np.ndarray:
        """u evaluated at ``zeta - delta`` (constant extension outside the grid)."""
        return np.interp(self.zeta - delta, self.zeta, self.u)


__all__ = ["PHASE_HEADER", "PROFILE_HEADER", "TWProblem", "TWProfile"]
