"""One-dimensional traveling-wave oracle: shock speeds and profile BVP."""

from filmpy.travelwave.bvp import (
    first_integral_residual,
    initial_guess,
    profile_distance,
    solve_tw_profile,
)
from filmpy.travelwave.models import PHASE_HEADER, PROFILE_HEADER, TWProblem, TWProfile
from filmpy.travelwave.phase import is_simple_curve, phase_plane
from filmpy.travelwave.speed import rankine_hugoniot_speed, wave_speeds

__all__ = [
    "PHASE_HEADER",
    "PROFILE_HEADER",
    "TWProblem",
    "TWProfile",
    "first_integral_residual",
    "initial_guess",
    "is_simple_curve",
    "phase_plane",
    "profile_distance",
    "rankine_hugoniot_speed",
    "solve_tw_profile",
    "wave_speeds",
]
