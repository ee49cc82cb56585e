"""Initial conditions and closed-form fields of the scenarios."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from filmpy.shared.errors import InvalidArgument

TW_U_MINUS = 0.3323
TW_U_PLUS = 0.1
BUMP_HEIGHT = 0.6
FRONT_STEEPNESS = 10.0
BUMP_SPLIT = 2.5

FINGER_U_MINUS = 1.0
FINGER_U_PLUS = 0.1
FINGER_AMPLITUDE = 0.2
FINGER_WAVELENGTH = 15.0
FINGER_FRONT = 15.0

# (left front, right front) of the bump cases
_BUMP_FRONTS = {"tw2": (2.0, 3.0), "tw3": (1.5, 3.5)}


def _tanh_front(z, upper: float, lower: float, center: float, steepness: float = FRONT_STEEPNESS):
    return 0.5 * (upper - lower) * (1.0 - np.tanh(steepness * (z - center))) + lower


def initial_condition(case: str, x, z, u_minus: float = None, u_plus: float = None,
                      amplitude: float = FINGER_AMPLITUDE,
                      wavelength: float = FINGER_WAVELENGTH):
    """
    Initial film height of a traveling-wave or fingering case at ``(x, z)``.

    ``tw1`` is a single tanh front at z = 2.5; ``tw2``/``tw3`` carry a bump of
    height 0.6 and width 1 or 2, split at z = 2.5; ``finger`` is a front at
    z = 15 perturbed by ``amplitude cos(2 pi x / wavelength)``. Arrays
    broadcast.

    Raises:
        InvalidArgument: Unknown case.
    """
    case = str(getattr(case, "value", case)).lower()
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if case == "finger":
        um = FINGER_U_MINUS if u_minus is None else u_minus
        up = FINGER_U_PLUS if u_plus is None else u_plus
        shift = amplitude * np.cos(2.0 * math.pi * x / wavelength)
        return _tanh_front(z - FINGER_FRONT + shift, um, up, 0.0, steepness=1.0) + 0.0 * x

    um = TW_U_MINUS if u_minus is None else u_minus
    up = TW_U_PLUS if u_plus is None else u_plus
    if case == "tw1":
        return _tanh_front(z, um, up, BUMP_SPLIT) + 0.0 * x
    if case in _BUMP_FRONTS:
        left, right = _BUMP_FRONTS[case]
        behind = _tanh_front(z, um, BUMP_HEIGHT, left)
        ahead = _tanh_front(z, BUMP_HEIGHT, up, right)
        return np.where(z <= BUMP_SPLIT, behind, ahead) + 0.0 * x
    raise InvalidArgument(f"Unknown initial condition '{case}' (use tw1, tw2, tw3 or finger)")


def initial_sampler(case: str, **params) -> Callable:
    """``(x, z) -> u`` bound to one case."""
    def sample(x, z):
        return initial_condition(case, x, z, **params)
    return sample


def decay_factor(beta: float, gamma: float, t: float) -> float:
    """Amplitude of the cosine mode at time ``t`` under the linear equation."""
    return math.exp(-(8.0 * beta * math.pi ** 2 + 64.0 * gamma * math.pi ** 4) * t)


def cosine_mode(x, z):
    return np.cos(2.0 * math.pi * np.asarray(x, dtype=float)) * np.cos(2.0 * math.pi * np.asarray(z, dtype=float))


def linear_exact(beta: float, gamma: float, t: float) -> Callable:
    """Exact solution of the linear equation on the unit square at time ``t``."""
    factor = decay_factor(beta, gamma, t)

    def exact(x, z):
        return factor * cosine_mode(x, z)
    return exact


def cross_tanh(x, z, steepness: float = 100.0):
    """``-tanh(100 z) tanh(100 x)``, steep along both axes."""
    return -np.tanh(steepness * np.asarray(z, dtype=float)) * np.tanh(steepness * np.asarray(x, dtype=float))


__all__ = [
    "cosine_mode",
    "cross_tanh",
    "decay_factor",
    "initial_condition",
    "initial_sampler",
    "linear_exact",
]
