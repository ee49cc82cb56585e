"""IMEX residual and frozen Jacobian of the mixed thin film system."""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from filmpy.assembly.models import FieldState, PhysicsModel
from filmpy.assembly.operators import (
    assemble_convection,
    assemble_mass,
    assemble_stiffness,
    assemble_weighted_stiffness,
)
from filmpy.mesh.models import TriMesh
from filmpy.solver.models import BlockSystem, TimeStepperConfig


def build_jacobian(mesh: TriMesh, model: PhysicsModel, state_n: FieldState,
                   cfg: TimeStepperConfig) -> BlockSystem:
    """Assemble the step operators with K1 frozen at ``u^n``.

    The returned system also carries ``F̄(u^n)`` and the Dirichlet data
    (taken from ``state_n.u``) so residual evaluations reuse them.
    """
    state_n.check(mesh.n_nodes)
    mass = assemble_mass(mesh)
    stiffness = assemble_stiffness(mesh)
    mobility = assemble_weighted_stiffness(mesh, state_n.u, model.stepper_mobility)
    return BlockSystem(
        mass=mass,
        mobility_stiffness=mobility,
        stiffness=stiffness,
        beta=model.beta,
        gamma=model.gamma,
        dt=cfg.dt,
        dirichlet_mask=mesh.dirichlet_mask.copy(),
        convection=assemble_convection(mesh, state_n.u, model),
        boundary_values=np.where(mesh.dirichlet_mask, state_n.u, 0.0),
    )


def imex_residual(
    mesh: TriMesh,
    model: PhysicsModel,
    state_n: FieldState,
    candidate: FieldState,
    cfg: TimeStepperConfig,
    system: Optional[BlockSystem] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Residual blocks of one IMEX step at ``candidate``:

        f0 = M1 (u - u^n) + dt K1(u) w - dt F̄(u^n)
        f1 = -beta M1 u - gamma K2 u + M1 w

    Dirichlet rows of ``f0`` become ``u - u_B``.

    Raises:
        NumericalBreakdown: The candidate holds non-finite values.
    """
    candidate.check(mesh.n_nodes)
    if system is None:
        system = build_jacobian(mesh, model, state_n, cfg)
    dt = cfg.dt
    mass = system.mass
    mobility = assemble_weighted_stiffness(mesh, candidate.u, model.stepper_mobility)
    f0 = mass @ (candidate.u - state_n.u) + dt * (mobility @ candidate.w) - dt * system.convection
    f1 = -model.beta * (mass @ candidate.u) - model.gamma * (system.stiffness @ candidate.u) + mass @ candidate.w
    mask = system.dirichlet_mask
    f0[mask] = candidate.u[mask] - system.boundary_values[mask]
    system.f0, system.f1 = f0, f1
    return f0, f1


__all__ = ["build_jacobian", "imex_residual"]
