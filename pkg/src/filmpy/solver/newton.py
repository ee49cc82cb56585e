"""Quasi-Newton IMEX steps with step halving on failure."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from filmpy.assembly.models import FieldState, PhysicsModel
from filmpy.mesh.models import TriMesh
from filmpy.shared.errors import InnerSolverError, NonConvergence, NumericalBreakdown
from filmpy.solver.krylov import krylov_solve
from filmpy.solver.models import TimeStepperConfig
from filmpy.solver.precond import SchurPreconditioner
from filmpy.solver.residual import build_jacobian, imex_residual

_LOGGER = logging.getLogger(__name__)


@dataclass
class StepReport:
    """Diagnostics of one accepted (sub)step."""
    t: float
    dt: float
    newton_iterations: int
    krylov_iterations: int
    residual: float
    increment: float
    level: int = 0


def quasi_newton_step(mesh: TriMesh, model: PhysicsModel, state_n: FieldState,
                      cfg: TimeStepperConfig) -> Tuple[FieldState, StepReport]:
    """
    Advance ``state_n`` by ``cfg.dt``.

    The Jacobian (K1 frozen at ``u^n``) and its preconditioner are built once;
    K1 of the current iterate is re-assembled inside every residual. Iteration
    starts from ``x^n`` and stops once ``||delta||_inf <= newton_tol``; the
    residual norm is only reported.

    Raises:
        NonConvergence: ``newton_max_iter`` iterations without convergence.
        NumericalBreakdown: An iterate became non-finite.
    """
    state_n.check(mesh.n_nodes)
    system = build_jacobian(mesh, model, state_n, cfg)
    jacobian = system.jacobian()
    precond = SchurPreconditioner(system, cfg.inner_solver, cfg.inner_sweeps) if cfg.precondition else None
    t_next = state_n.t + cfg.dt

    x = state_n.stacked()
    f = np.concatenate(imex_residual(mesh, model, state_n, state_n, cfg, system))
    residual = float(np.max(np.abs(f)))
    krylov_total = 0

    for iteration in range(1, cfg.newton_max_iter + 1):
        solve = krylov_solve(jacobian, f, precond, cfg)
        krylov_total += solve.iterations
        x = x - solve.x
        if not np.all(np.isfinite(x)):
            raise NumericalBreakdown(f"Non-finite Newton iterate at t={t_next:g}")
        candidate = FieldState.from_stacked(x, t_next)
        f = np.concatenate(imex_residual(mesh, model, state_n, candidate, cfg, system))
        increment = float(np.max(np.abs(solve.x)))
        residual = float(np.max(np.abs(f)))
        _LOGGER.debug("Newton %d: |delta|=%.3e |f|=%.3e krylov=%d",
                      iteration, increment, residual, solve.iterations)
        if increment <= cfg.newton_tol:
            report = StepReport(t_next, cfg.dt, iteration, krylov_total, residual, increment)
            return candidate, report

    raise NonConvergence(f"Quasi-Newton did not converge at t={t_next:g}", cfg.newton_max_iter, residual)


def advance(mesh: TriMesh, model: PhysicsModel, state: FieldState,
            cfg: TimeStepperConfig, level: int = 0) -> Tuple[FieldState, List[StepReport]]:
    """One time step of size ``cfg.dt``, retried as two half steps on failure.

    Halving recurses up to ``cfg.max_halvings`` levels before the last
    failure is re-raised.
    """
    try:
        new_state, report = quasi_newton_step(mesh, model, state, cfg)
    except (NonConvergence, NumericalBreakdown) as exc:
        if isinstance(exc, InnerSolverError) or level >= cfg.max_halvings:
            _LOGGER.error("Step from t=%g with dt=%g failed: %s", state.t, cfg.dt, exc)
            raise
        half = cfg.with_dt(0.5 * cfg.dt)
        _LOGGER.warning("Step from t=%g failed (%s); retrying with dt=%g", state.t, exc, half.dt)
        mid, first = advance(mesh, model, state, half, level + 1)
        end, second = advance(mesh, model, mid, half, level + 1)
        return end, first + second
    report.level = level
    return new_state, [report]


__all__ = ["StepReport", "advance", "quasi_newton_step"]
