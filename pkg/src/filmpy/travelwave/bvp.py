"""
Traveling-wave profiles by box-scheme collocation and damped Newton.

The third-order profile equation is written as the first-order system

    u' = v,   v' = w,
    w' = [s (u - u+) - (F(u) - F(u+)) + beta K(u) v + c] / (gamma K(u))

on a uniform grid with u(left) = u-, w(left) = 0 and u(right) = u+. The
extra unknown ``c`` is paired with the phase condition
u(guess_center) = (u- + u+) / 2, which removes the near-translation
invariance of the truncated problem; ``c`` is of the size of the neglected
tails and is reported with the profile.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import splu

from filmpy.shared.errors import NonConvergence, NumericalBreakdown
from filmpy.travelwave.models import TWProblem, TWProfile

_LOGGER = logging.getLogger(__name__)

MAX_HALVINGS = 8
_DIFF_STEP = 1e-6


def _slope(fn, u: np.ndarray) -> np.ndarray:
    return (np.asarray(fn(u + _DIFF_STEP)) - np.asarray(fn(u - _DIFF_STEP))) / (2.0 * _DIFF_STEP)


def initial_guess(p: TWProblem, zeta: np.ndarray) -> np.ndarray:
    """tanh front of width ``guess_width`` centred at ``guess_center``, with exact derivatives."""
    amp = 0.5 * (p.u_minus - p.u_plus)
    arg = (zeta - p.guess_center) / p.guess_width
    th = np.tanh(arg)
    sech2 = 1.0 - th ** 2
    u = p.u_plus + amp * (1.0 - th)
    v = -amp * sech2 / p.guess_width
    w = 2.0 * amp * th * sech2 / p.guess_width ** 2
    x = np.empty(3 * zeta.shape[0] + 1)
    x[0:-1:3], x[1:-1:3], x[2:-1:3] = u, v, w
    x[-1] = 0.0
    return x


def _unpack(x: np.ndarray):
    return x[0:-1:3], x[1:-1:3], x[2:-1:3], x[-1]


def _phase_index(p: TWProblem, zeta: np.ndarray) -> int:
    return int(np.argmin(np.abs(zeta - p.guess_center)))


def collocation_residual(p: TWProblem, s: float, zeta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Box-scheme residual (3N equations), boundary rows and phase row."""
    model = p.model
    u, v, w, c = _unpack(x)
    h = np.diff(zeta)
    um = 0.5 * (u[1:] + u[:-1])
    vm = 0.5 * (v[1:] + v[:-1])
    wm = 0.5 * (w[1:] + w[:-1])
    k = np.asarray(model.mobility(um), dtype=float)
    drive = s * (um - p.u_plus) - (model.flux(um) - model.flux(np.float64(p.u_plus))) \
        + model.beta * k * vm + c
    n = zeta.shape[0] - 1
    res = np.empty(3 * n + 4)
    res[0:3 * n:3] = np.diff(u) / h - vm
    res[1:3 * n:3] = np.diff(v) / h - wm
    res[2:3 * n:3] = np.diff(w) / h - drive / (model.gamma * k)
    res[3 * n] = u[0] - p.u_minus
    res[3 * n + 1] = w[0]
    res[3 * n + 2] = u[-1] - p.u_plus
    res[3 * n + 3] = u[_phase_index(p, zeta)] - p.midpoint
    return res


def collocation_jacobian(p: TWProblem, s: float, zeta: np.ndarray, x: np.ndarray) -> sp.csc_matrix:
    model = p.model
    u, v, w, c = _unpack(x)
    n = zeta.shape[0] - 1
    size = x.shape[0]
    h = np.diff(zeta)
    um = 0.5 * (u[1:] + u[:-1])
    vm = 0.5 * (v[1:] + v[:-1])
    k = np.asarray(model.mobility(um), dtype=float)
    dk = _slope(model.mobility, um)
    df = model.flux_slope(um)
    drive = s * (um - p.u_plus) - (model.flux(um) - model.flux(np.float64(p.u_plus))) \
        + model.beta * k * vm + c
    gk = model.gamma * k
    d_um = (s - df + model.beta * dk * vm) / gk - drive * dk / (gk * k)
    d_vm = model.beta / model.gamma
    d_c = 1.0 / gk

    rows, cols, vals = [], [], []

    def put(r, col, val):
        rows.append(np.broadcast_to(r, (n,)))
        cols.append(np.broadcast_to(col, (n,)))
        vals.append(np.broadcast_to(val, (n,)))

    i = np.arange(n)
    ui, vi, wi = 3 * i, 3 * i + 1, 3 * i + 2
    r1, r2, r3 = 3 * i, 3 * i + 1, 3 * i + 2
    # u' = v
    put(r1, ui, -1.0 / h)
    put(r1, ui + 3, 1.0 / h)
    put(r1, vi, -0.5)
    put(r1, vi + 3, -0.5)
    # v' = w
    put(r2, vi, -1.0 / h)
    put(r2, vi + 3, 1.0 / h)
    put(r2, wi, -0.5)
    put(r2, wi + 3, -0.5)
    # w' = drive / (gamma K)
    put(r3, wi, -1.0 / h)
    put(r3, wi + 3, 1.0 / h)
    put(r3, ui, -0.5 * d_um)
    put(r3, ui + 3, -0.5 * d_um)
    put(r3, vi, -0.5 * d_vm)
    put(r3, vi + 3, -0.5 * d_vm)
    put(r3, size - 1, -d_c)

    extra_rows = [3 * n, 3 * n + 1, 3 * n + 2, 3 * n + 3]
    extra_cols = [0, 2, 3 * n, 3 * _phase_index(p, zeta)]
    rows.append(np.array(extra_rows))
    cols.append(np.array(extra_cols))
    vals.append(np.ones(4))
    return sp.csc_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    )


def solve_tw_profile(p: TWProblem, s: float, guess: Optional[np.ndarray] = None) -> TWProfile:
    """
    Solve for the profile travelling with speed ``s``.

    Newton steps are halved (at most 8 times) until the max-norm residual
    decreases; iteration stops when the residual is below ``newton_tol``.
    The unknowns are the nodal ``(u, v, w)`` plus the bordering constant
    ``c`` of the phase condition; ``c`` is returned as ``profile.bordering``
    and is the residual :func:`first_integral_residual` sees. Fronts placed
    near an end of the interval pick up tail truncation of the same size.

    Raises:
        NonConvergence: No convergence within ``newton_max`` iterations.
    """
    zeta = p.grid()
    x = initial_guess(p, zeta) if guess is None else np.array(guess, dtype=float, copy=True)
    res = collocation_residual(p, s, zeta, x)
    norm = float(np.max(np.abs(res)))
    for iteration in range(1, p.newton_max + 1):
        if norm <= p.newton_tol:
            return _profile(zeta, x, s, iteration - 1, norm)
        jac = collocation_jacobian(p, s, zeta, x)
        try:
            step = splu(jac).solve(-res)
        except RuntimeError as exc:
            raise NonConvergence(f"Singular collocation Jacobian ({exc})", iteration, norm) from exc
        lam = 1.0
        for _ in range(MAX_HALVINGS + 1):
            trial = x + lam * step
            trial_res = collocation_residual(p, s, zeta, trial)
            trial_norm = float(np.max(np.abs(trial_res)))
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            lam *= 0.5
        if not np.isfinite(trial_norm):
            raise NumericalBreakdown("Non-finite traveling-wave iterate")
        x, res, norm = trial, trial_res, trial_norm
        _LOGGER.debug("TW Newton %d: residual=%.3e damping=%g", iteration, norm, lam)
    if norm <= p.newton_tol:
        return _profile(zeta, x, s, p.newton_max, norm)
    raise NonConvergence(
        "Traveling-wave Newton did not converge; try a wider interval or a finer grid",
        p.newton_max, norm,
    )


def _profile(zeta: np.ndarray, x: np.ndarray, s: float, iterations: int, residual: float) -> TWProfile:
    u, v, w, c = _unpack(x)
    _LOGGER.info("TW profile converged in %d iterations (residual %.3e, c=%.3e)", iterations, residual, c)
    return TWProfile(zeta, u.copy(), v.copy(), w.copy(), float(s), float(c), iterations, residual)


def first_integral_residual(p: TWProblem, profile: TWProfile) -> float:
    """
    Max-norm residual of ``gamma K u''' - beta K u' = s (u - u+) - (F(u) - F(u+))``
    at cell midpoints, with ``u'''`` differenced from the ``u''`` samples.
    """
    model = p.model
    h = np.diff(profile.zeta)
    um = 0.5 * (profile.u[1:] + profile.u[:-1])
    vm = 0.5 * (profile.du[1:] + profile.du[:-1])
    k = np.asarray(model.mobility(um), dtype=float)
    third = np.diff(profile.d2u) / h
    lhs = model.gamma * k * third - model.beta * k * vm
    rhs = profile.speed * (um - p.u_plus) - (model.flux(um) - model.flux(np.float64(p.u_plus)))
    return float(np.max(np.abs(lhs - rhs)))


def profile_distance(reference: TWProfile, zeta: np.ndarray, u: np.ndarray,
                     bracket: Tuple[float, float] = (-1.0, 1.0)) -> Tuple[float, float]:
    """L-infinity distance between ``u(zeta)`` and the reference after the best shift.

    Returns ``(distance, shift)``; the reference is translated by ``shift``
    and compared on the part of ``zeta`` covered by both.
    """
    zeta = np.asarray(zeta, dtype=float)
    u = np.asarray(u, dtype=float)

    def distance(shift: float) -> float:
        inside = (zeta - shift >= reference.zeta[0]) & (zeta - shift <= reference.zeta[-1])
        if not np.any(inside):
            return float("inf")
        ref = np.interp(zeta[inside] - shift, reference.zeta, reference.u)
        return float(np.max(np.abs(ref - u[inside])))

    coarse = np.linspace(bracket[0], bracket[1], 81)
    start = coarse[int(np.argmin([distance(d) for d in coarse]))]
    step = (bracket[1] - bracket[0]) / 80.0
    best = minimize_scalar(distance, bounds=(start - step, start + step), method="bounded",
                           options={"xatol": 1e-12})
    shift = float(best.x) if distance(best.x) <= distance(start) else float(start)
    return distance(shift), shift


__all__ = [
    "collocation_residual",
    "first_integral_residual",
    "initial_guess",
    "profile_distance",
    "solve_tw_profile",
]
