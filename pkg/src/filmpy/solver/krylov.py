"""Restarted GMRES with left preconditioning."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
import scipy.sparse as sp
from scipy.linalg import solve_triangular

from filmpy.assembly.models import SparseOperator
from filmpy.shared.errors import NonConvergence, NumericalBreakdown

_LOGGER = logging.getLogger(__name__)

Operator = Union[SparseOperator, sp.spmatrix, np.ndarray, Callable[[np.ndarray], np.ndarray]]

_BREAKDOWN = 1e-300


@dataclass
class KrylovResult:
    """Solution of one linear solve and how it was reached."""
    x: np.ndarray
    iterations: int
    residual: float  # relative, preconditioned


def _as_callable(op: Optional[Operator]) -> Optional[Callable[[np.ndarray], np.ndarray]]:
    if op is None:
        return None
    if isinstance(op, SparseOperator):
        return op.matvec
    if sp.issparse(op) or isinstance(op, np.ndarray):
        return lambda v: op @ v
    if callable(op):
        return op
    raise TypeError(f"Cannot use {type(op).__name__} as a linear operator")


def gmres(
    matvec: Operator,
    b: np.ndarray,
    precond: Optional[Operator] = None,
    restart: int = 60,
    tol: float = 1e-8,
    max_iter: int = 500,
    x0: Optional[np.ndarray] = None,
) -> KrylovResult:
    """
    GMRES(restart) on ``P^-1 A x = P^-1 b``.

    Stops when ``||P^-1 (b - A x)|| <= tol * ||P^-1 b||``. The Arnoldi basis
    is built by modified Gram-Schmidt; the small least-squares problem is
    kept triangular with Givens rotations.

    Raises:
        NonConvergence: ``max_iter`` Arnoldi steps without reaching ``tol``.
        NumericalBreakdown: Non-finite residuals.
    """
    apply_a = _as_callable(matvec)
    apply_p = _as_callable(precond) or (lambda v: v)
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float, copy=True)

    reference = float(np.linalg.norm(apply_p(b)))
    if reference == 0.0:
        return KrylovResult(np.zeros(n), 0, 0.0)
    if not math.isfinite(reference):
        raise NumericalBreakdown("Non-finite right-hand side in GMRES")

    r = apply_p(b - apply_a(x))
    beta = float(np.linalg.norm(r))
    iterations = 0
    target = tol * reference

    while beta > target:
        if not math.isfinite(beta):
            raise NumericalBreakdown("Non-finite residual in GMRES")
        if iterations >= max_iter:
            raise NonConvergence("GMRES did not converge", iterations, beta / reference)
        m = min(restart, max_iter - iterations)
        basis = np.zeros((m + 1, n))
        hess = np.zeros((m + 1, m))
        cs = np.zeros(m)
        sn = np.zeros(m)
        g = np.zeros(m + 1)
        g[0] = beta
        basis[0] = r / beta
        k = 0
        for j in range(m):
            w = apply_p(apply_a(basis[j]))
            iterations += 1
            for i in range(j + 1):
                hess[i, j] = np.dot(basis[i], w)
                w = w - hess[i, j] * basis[i]
            hess[j + 1, j] = np.linalg.norm(w)
            if hess[j + 1, j] > _BREAKDOWN:
                basis[j + 1] = w / hess[j + 1, j]
            for i in range(j):
                upper = cs[i] * hess[i, j] + sn[i] * hess[i + 1, j]
                hess[i + 1, j] = -sn[i] * hess[i, j] + cs[i] * hess[i + 1, j]
                hess[i, j] = upper
            denom = math.hypot(hess[j, j], hess[j + 1, j])
            if denom == 0.0:
                raise NumericalBreakdown("Singular Hessenberg matrix in GMRES")
            cs[j] = hess[j, j] / denom
            sn[j] = hess[j + 1, j] / denom
            hess[j, j] = denom
            hess[j + 1, j] = 0.0
            g[j + 1] = -sn[j] * g[j]
            g[j] = cs[j] * g[j]
            k = j + 1
            if abs(g[j + 1]) <= target:
                break
        y = solve_triangular(hess[:k, :k], g[:k])
        x = x + basis[:k].T @ y
        r = apply_p(b - apply_a(x))
        beta = float(np.linalg.norm(r))

    _LOGGER.debug("GMRES converged in %d iterations (relative residual %.3e)", iterations, beta / reference)
    return KrylovResult(x, iterations, beta / reference)


def krylov_solve(J: Operator, rhs: np.ndarray, precond: Optional[Operator], cfg) -> KrylovResult:
    """GMRES with the restart, tolerance and iteration cap of a :class:`TimeStepperConfig`."""
    return gmres(
        J, rhs, precond,
        restart=cfg.krylov_restart,
        tol=cfg.krylov_tol,
        max_iter=cfg.krylov_max_iter,
    )


__all__ = ["KrylovResult", "gmres", "krylov_solve"]
