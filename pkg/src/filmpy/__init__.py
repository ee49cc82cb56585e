"""
filmpy - moving-mesh finite element simulator for thin film flow

Solves the fourth-order thin film equation

    u_t + dF(u)/dz - beta div[K(u) grad u] + gamma div[K(u) grad lap u] = 0

on rectangles with a mixed (u, w) linear finite element discretization,
IMEX time stepping and quasi-Newton iterations preconditioned by a block
Schur complement, plus harmonic-map mesh redistribution with a diffusively
smoothed monitor.

Supports:
- Structured triangular meshes with fixed computational coordinates
- Mass/stiffness/convection assembly on moving meshes
- Arc-length and curvature monitors with anisotropic smoothing
- A 1D traveling-wave boundary value oracle
- Scenario runs: convergence, traveling waves, fingering, mesh demo
"""

import importlib.metadata


def get_version() -> str:
    """
    Get version from package metadata.

    Returns:
        Version string (e.g., "0.1.0")
    """
    try:
        return importlib.metadata.version("filmpy")
    except importlib.metadata.PackageNotFoundError:
        # Fallback during development
        return "0.1.0-dev"


__version__ = get_version()
__author__ = "snekfx"

__all__ = [
    "__version__",
    "__author__",
]
