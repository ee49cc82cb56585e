"""Harmonic-map mesh redistribution driven by a smoothed monitor."""

from filmpy.moving.cycle import CycleReport, mesh_move_cycle, physical_displacement
from filmpy.moving.harmonic import equidistribute, redistribute_boundary, solve_harmonic_map
from filmpy.moving.models import MonitorKind, MonitorSpec, MovingMeshParams, SmoothingParams
from filmpy.moving.monitor import compute_monitor, recover_gradient, recover_laplacian
from filmpy.moving.quality import (
    RATIO_HEADER,
    DensityRatio,
    density_ratio_report,
    ratio_bounds,
    ratio_extremes,
)
from filmpy.moving.smoothing import smooth_monitor
from filmpy.moving.transfer import interpolate_field

__all__ = [
    "CycleReport",
    "DensityRatio",
    "MonitorKind",
    "MonitorSpec",
    "MovingMeshParams",
    "RATIO_HEADER",
    "SmoothingParams",
    "compute_monitor",
    "density_ratio_report",
    "equidistribute",
    "interpolate_field",
    "mesh_move_cycle",
    "physical_displacement",
    "ratio_bounds",
    "ratio_extremes",
    "recover_gradient",
    "recover_laplacian",
    "redistribute_boundary",
    "smooth_monitor",
    "solve_harmonic_map",
]
