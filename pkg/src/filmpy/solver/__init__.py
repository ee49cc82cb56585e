"""IMEX time stepping: residual, frozen Jacobian, Schur preconditioner, GMRES, quasi-Newton."""

from filmpy.solver.inner import DirectInnerSolver, SweepInnerSolver, make_inner_solver
from filmpy.solver.krylov import KrylovResult, gmres, krylov_solve
from filmpy.solver.models import BlockSystem, InnerSolverKind, TimeStepperConfig
from filmpy.solver.newton import StepReport, advance, quasi_newton_step
from filmpy.solver.precond import SchurPreconditioner, apply_schur_preconditioner
from filmpy.solver.residual import build_jacobian, imex_residual

__all__ = [
    "BlockSystem",
    "DirectInnerSolver",
    "InnerSolverKind",
    "KrylovResult",
    "SchurPreconditioner",
    "StepReport",
    "SweepInnerSolver",
    "TimeStepperConfig",
    "advance",
    "apply_schur_preconditioner",
    "build_jacobian",
    "gmres",
    "imex_residual",
    "krylov_solve",
    "make_inner_solver",
    "quasi_newton_step",
]
