"""Parameters of monitor construction, smoothing and mesh motion."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from filmpy.mesh.models import TriMesh
from filmpy.shared.errors import InvalidArgument


class MonitorKind(Enum):
    """Monitor component: gradient norm or square root of the Laplacian."""
    ARC_LENGTH = "arc-length"
    CURVATURE = "curvature"

    @classmethod
    def parse(cls, value) -> "MonitorKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "-")
        try:
            return cls({"arclength": "arc-length"}.get(text, text))
        except ValueError:
            raise InvalidArgument(f"Unknown monitor kind '{value}' (use arc-length or curvature)") from None


@dataclass(frozen=True)
class MonitorSpec:
    kind: MonitorKind = MonitorKind.ARC_LENGTH
    kappa: float = 0.5
    floor_eps: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "kind", MonitorKind.parse(self.kind))
        if not 0.0 <= self.kappa <= 1.0:
            raise InvalidArgument(f"kappa must lie in [0, 1] (got {self.kappa})")
        if not self.floor_eps > 0.0:
            raise InvalidArgument(f"floor_eps must be > 0 (got {self.floor_eps})")


@dataclass(frozen=True)
class SmoothingParams:
    sigma_xi: float = 1.0
    sigma_eta: float = 1.0
    cg_max_iter: int = 20
    cg_rel_tol: float = 1e-3

    def __post_init__(self):
        if self.sigma_xi < 0.0 or self.sigma_eta < 0.0:
            raise InvalidArgument(
                f"Smoothing parameters must be >= 0 (got {self.sigma_xi}, {self.sigma_eta})"
            )
        if self.cg_max_iter < 1 or not 0.0 < self.cg_rel_tol < 1.0:
            raise InvalidArgument("cg_max_iter must be >= 1 and cg_rel_tol in (0, 1)")

    def diffusion(self, nx: int, nz: int):
        """Diagonal of the constant smoothing tensor on the computational square."""
        return (
            self.sigma_xi * (self.sigma_xi + 1.0) / nx ** 2,
            self.sigma_eta * (self.sigma_eta + 1.0) / nz ** 2,
        )


@dataclass(frozen=True)
class MovingMeshParams:
    """Outer-iteration and anti-tangling controls.

    ``delta_xi_tol`` of None means ``0.1 * min(dxi, deta)`` of the mesh.
    """
    max_outer_iter: int = 5
    delta_xi_tol: Optional[float] = None
    tau_initial: float = 1.0
    area_guard: float = 0.1
    tau_min: float = 1.0 / 64.0

    def __post_init__(self):
        if self.max_outer_iter < 1:
            raise InvalidArgument(f"max_outer_iter must be >= 1 (got {self.max_outer_iter})")
        if not 0.0 < self.tau_initial <= 1.0:
            raise InvalidArgument(f"tau_initial must lie in (0, 1] (got {self.tau_initial})")
        if not 0.0 < self.area_guard < 1.0:
            raise InvalidArgument(f"area_guard must lie in (0, 1) (got {self.area_guard})")
        if self.delta_xi_tol is not None and not self.delta_xi_tol > 0.0:
            raise InvalidArgument(f"delta_xi_tol must be > 0 (got {self.delta_xi_tol})")

    def tolerance_for(self, mesh: TriMesh) -> float:
        if self.delta_xi_tol is not None:
            return self.delta_xi_tol
        return 0.1 * min(1.0 / mesh.nx, 1.0 / mesh.nz)


__all__ = ["MonitorKind", "MonitorSpec", "MovingMeshParams", "SmoothingParams"]
