"""Shock speeds from the jump condition."""

from __future__ import annotations

from typing import Callable, List, Sequence, Union

import numpy as np

from filmpy.assembly.models import PhysicsModel
from filmpy.shared.errors import InvalidArgument


def _flux_of(model: Union[PhysicsModel, Callable]) -> Callable:
    return model.flux if isinstance(model, PhysicsModel) else model


def rankine_hugoniot_speed(model: Union[PhysicsModel, Callable], u_minus: float, u_plus: float) -> float:
    """``s = (F(u+) - F(u-)) / (u+ - u-)`` for a flux or a model's flux."""
    if u_minus == u_plus:
        raise InvalidArgument(f"States must differ (both are {u_minus})")
    flux = _flux_of(model)
    jump = float(np.asarray(flux(np.float64(u_plus)))) - float(np.asarray(flux(np.float64(u_minus))))
    return jump / (u_plus - u_minus)


def wave_speeds(model: Union[PhysicsModel, Callable], states: Sequence[float]) -> List[float]:
    """Speeds of the shocks joining consecutive states, left to right."""
    return [rankine_hugoniot_speed(model, a, b) for a, b in zip(states[:-1], states[1:])]


__all__ = ["rankine_hugoniot_speed", "wave_speeds"]
