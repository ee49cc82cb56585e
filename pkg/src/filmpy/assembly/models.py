"""Data models for the mixed finite element discretization."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from filmpy.shared.errors import InvalidArgument, NumericalBreakdown

ScalarMap = Callable[[np.ndarray], np.ndarray]

# Step used for central differences when a model has no analytic derivative
_DIFF_STEP = 1e-6


def film_flux(u):
    """Gravity-driven flux of the rescaled thin film problem, ``u^2 - u^3``."""
    return u ** 2 - u ** 3


def film_flux_derivative(u):
    return 2.0 * u - 3.0 * u ** 2


def cubic(u):
    return u ** 3


def cubic_derivative(u):
    return 3.0 * u ** 2


def zero(u):
    return np.zeros_like(np.asarray(u, dtype=float))


def one(u):
    return np.ones_like(np.asarray(u, dtype=float))


@dataclass(frozen=True)
class PhysicsModel:
    """
    Coefficients of ``u_t + F(u)_z - beta div(K grad u) + gamma div(K grad lap u) = 0``
    written in a frame moving upward with speed ``frame_speed``.

    ``mobility_floor`` clamps K from below inside the time stepper only;
    the raw assembly routines still reject nonpositive coefficients.
    """
    flux: ScalarMap
    mobility: ScalarMap
    beta: float = 0.0
    gamma: float = 1.0
    frame_speed: float = 0.0
    mobility_floor: float = 0.0
    flux_derivative: Optional[ScalarMap] = None
    name: str = "custom"

    def __post_init__(self):
        if not self.beta >= 0.0:
            raise InvalidArgument(f"beta must be >= 0 (got {self.beta})")
        if not self.gamma > 0.0:
            raise InvalidArgument(f"gamma must be > 0 (got {self.gamma})")
        if not self.mobility_floor >= 0.0:
            raise InvalidArgument(f"mobility_floor must be >= 0 (got {self.mobility_floor})")
        if not np.isfinite(self.frame_speed):
            raise InvalidArgument(f"frame_speed must be finite (got {self.frame_speed})")

    def convective_flux(self, u) -> np.ndarray:
        """F̂(u) = F(u) - s u, the flux seen in the moving frame."""
        u = np.asarray(u, dtype=float)
        return self.flux(u) - self.frame_speed * u

    def flux_slope(self, u) -> np.ndarray:
        """dF/du, analytic when available, else a central difference."""
        u = np.asarray(u, dtype=float)
        if self.flux_derivative is not None:
            return np.asarray(self.flux_derivative(u), dtype=float)
        return (self.flux(u + _DIFF_STEP) - self.flux(u - _DIFF_STEP)) / (2.0 * _DIFF_STEP)

    def characteristic_speed(self, u) -> np.ndarray:
        """dF̂/du, used for CFL reporting."""
        return self.flux_slope(u) - self.frame_speed

    def stepper_mobility(self, u) -> np.ndarray:
        """Mobility with the floor applied (identity when the floor is 0)."""
        k = np.asarray(self.mobility(np.asarray(u, dtype=float)), dtype=float)
        if self.mobility_floor > 0.0:
            return np.maximum(k, self.mobility_floor)
        return k

    def with_frame_speed(self, speed: float) -> "PhysicsModel":
        return replace(self, frame_speed=float(speed))

    @classmethod
    def thin_film(cls, beta: float = 0.0, gamma: float = 0.001, frame_speed: float = 0.0,
                  mobility_floor: float = 0.0) -> "PhysicsModel":
        """F = u^2 - u^3, K = u^3: the rescaled inclined-plane film."""
        return cls(film_flux, cubic, beta, gamma, frame_speed, mobility_floor,
                   film_flux_derivative, "thin-film")

    @classmethod
    def fingering(cls, beta: float = 0.0, gamma: float = 1.0, frame_speed: float = 0.0,
                  mobility_floor: float = 0.0) -> "PhysicsModel":
        """F = K = u^3: the driven contact-line problem."""
        return cls(cubic, cubic, beta, gamma, frame_speed, mobility_floor,
                   cubic_derivative, "fingering")

    @classmethod
    def linear(cls, beta: float = 0.5, gamma: float = 0.0025) -> "PhysicsModel":
        """F = 0, K = 1: the linear equation with a closed-form solution."""
        return cls(zero, one, beta, gamma, 0.0, 0.0, zero, "linear")


@dataclass
class FieldState:
    """Nodal coefficients of the two mixed unknowns at time ``t``."""
    u: np.ndarray
    w: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float).copy()
        self.w = np.asarray(self.w, dtype=float).copy()
        if self.u.shape != self.w.shape or self.u.ndim != 1:
            raise InvalidArgument(
                f"u and w must be vectors of equal length (got {self.u.shape} and {self.w.shape})"
            )

    @property
    def size(self) -> int:
        return int(self.u.shape[0])

    def check(self, n_nodes: Optional[int] = None) -> "FieldState":
        """Validate length and finiteness, returning self."""
        if n_nodes is not None and self.size != n_nodes:
            raise InvalidArgument(f"State has {self.size} entries, mesh has {n_nodes} nodes")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.w))):
            raise NumericalBreakdown(f"Non-finite field values at t={self.t:g}")
        return self

    def stacked(self) -> np.ndarray:
        """The 2N vector ``[u; w]``."""
        return np.concatenate([self.u, self.w])

    @classmethod
    def from_stacked(cls, x: np.ndarray, t: float) -> "FieldState":
        n = x.shape[0] // 2
        return cls(x[:n], x[n:], t)

    def copy(self) -> "FieldState":
        return FieldState(self.u, self.w, self.t)


@dataclass
class SparseOperator:
    """Assembled sparse matrix in compressed-row form with a symmetry flag."""
    matrix: sp.csr_matrix
    symmetric: bool = False
    name: str = ""
    _lu: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        matrix = sp.csr_matrix(self.matrix, dtype=float)
        matrix.sum_duplicates()
        matrix.sort_indices()
        self.matrix = matrix

    @classmethod
    def from_triplets(cls, rows, cols, values, n: int, symmetric: bool = False,
                      name: str = "") -> "SparseOperator":
        """Sum duplicate (row, col) entries into an ``n x n`` operator."""
        coo = sp.coo_matrix(
            (np.ravel(values), (np.ravel(rows), np.ravel(cols))), shape=(n, n)
        )
        return cls(coo.tocsr(), symmetric, name)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def nnz(self) -> int:
        return int(self.matrix.nnz)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)

    def __matmul__(self, x):
        return self.matvec(x)

    def scaled(self, factor: float, name: str = "") -> "SparseOperator":
        return SparseOperator(self.matrix * float(factor), self.symmetric, name or self.name)

    def plus(self, other: "SparseOperator", factor: float = 1.0, name: str = "") -> "SparseOperator":
        """``self + factor * other``."""
        return SparseOperator(
            self.matrix + float(factor) * other.matrix,
            self.symmetric and other.symmetric,
            name or self.name,
        )

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def asymmetry(self) -> float:
        """``max|A - A^T| / max|A|`` (0 for the zero matrix)."""
        scale = abs(self.matrix).max() if self.nnz else 0.0
        if scale == 0.0:
            return 0.0
        diff = self.matrix - self.matrix.T
        return float(abs(diff).max() / scale) if diff.nnz else 0.0

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Exact solve through a cached sparse LU factorization."""
        if self._lu is None:
            self._lu = splu(self.matrix.tocsc())
        return self._lu.solve(np.asarray(rhs, dtype=float))


__all__ = [
    "FieldState",
    "PhysicsModel",
    "SparseOperator",
    "cubic",
    "film_flux",
    "one",
    "zero",
]
