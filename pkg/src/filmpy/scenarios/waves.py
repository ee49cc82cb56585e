"""
Traveling-wave runs: the three initial conditions of the inclined-film problem,
comparison against the 1D oracle, front tracking, time-step and efficiency studies.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from filmpy.moving.models import MonitorKind
from filmpy.scenarios.diagnostics import (
    CENTERLINE_HEADER,
    centerline,
    front_position,
    plateau_value,
)
from filmpy.scenarios.driver import Simulation
from filmpy.scenarios.initial import initial_sampler
from filmpy.scenarios.models import Scenario, ScenarioConfig
from filmpy.shared.errors import InvalidArgument
from filmpy.shared.export import write_csv
from filmpy.travelwave.bvp import profile_distance, solve_tw_profile
from filmpy.travelwave.models import PROFILE_HEADER, TWProblem, TWProfile

_LOGGER = logging.getLogger(__name__)

FRONT_HEADER = ("t", "front", "speed")
SWEEP_HEADER = ("dt_a", "dt_b", "linf_difference")
EFFICIENCY_HEADER = ("variant", "h", "nodes", "linf_distance", "seconds")

EFFICIENCY_T_END = 20.0
EFFICIENCY_FIXED_H = 1.0 / 16.0
EFFICIENCY_MOVING_H = 1.0 / 8.0
EFFICIENCY_KAPPA = 0.3
DRIFT_WINDOW = (50.0, 100.0)


@dataclass
class FrontSample:
    t: float
    front: float


@dataclass
class WaveResult:
    """Final profile and diagnostics of one traveling-wave run."""
    scenario: Scenario
    z: np.ndarray
    u: np.ndarray
    du: np.ndarray
    front: float
    plateau: float
    distance: float
    shift: float
    fronts: List[FrontSample] = field(default_factory=list)
    nodes: int = 0
    seconds: float = 0.0

    def front_speeds(self, frame_speed: float) -> List[Tuple[float, float, float]]:
        """``(t, front, s + d(front)/dt)`` per recorded sample (lab-frame speed)."""
        if len(self.fronts) < 2:
            return [(f.t, f.front, float("nan")) for f in self.fronts]
        t = np.array([f.t for f in self.fronts])
        z = np.array([f.front for f in self.fronts])
        speed = frame_speed + np.gradient(z, t)
        return list(zip(t.tolist(), z.tolist(), speed.tolist()))

    def front_drift(self, window: Tuple[float, float] = DRIFT_WINDOW) -> float:
        """``max - min`` of the front position over samples inside ``window``."""
        inside = [f.front for f in self.fronts if window[0] - 1e-9 <= f.t <= window[1] + 1e-9]
        if len(inside) < 2:
            return float("nan")
        return float(np.nanmax(inside) - np.nanmin(inside))


def oracle_profile(cfg: ScenarioConfig, n_ode: int = 2000) -> TWProfile:
    """Traveling-wave profile of the run's states on the z-extent of the domain, centred at 0."""
    half = 0.5 * (cfg.z1 - cfg.z0)
    problem = TWProblem(cfg.physics(frame=False), cfg.u_minus, cfg.u_plus,
                        interval=(-half, half), n_ode=n_ode)
    return solve_tw_profile(problem, cfg.wave_speed())


def _front_recorder(cfg: ScenarioConfig, samples: List[FrontSample], every: int):
    level = 0.5 * (cfg.u_minus + cfg.u_plus)

    def record(sim: Simulation):
        if every and sim.step % every:
            return
        z, u, _ = centerline(sim.mesh, sim.state.u)
        samples.append(FrontSample(sim.t, front_position(z, u, level)))
    return record


def run_tw(cfg: ScenarioConfig, reference: Optional[TWProfile] = None,
           write_files: bool = True) -> WaveResult:
    """
    Run one traveling-wave case to ``cfg.t_end`` and compare the centerline
    with the oracle profile after the best translation.

    Writes ``centerline.csv``, ``front.csv``, ``tw_profile.csv`` and
    ``summary.yaml`` next to the snapshots.
    """
    if not cfg.scenario.is_wave:
        raise InvalidArgument(f"run_tw needs a tw1/tw2/tw3 config (got {cfg.scenario.value})")
    started = time.perf_counter()
    reference = reference or oracle_profile(cfg)
    sampler = initial_sampler(cfg.scenario.value, u_minus=cfg.u_minus, u_plus=cfg.u_plus)
    sim = Simulation.create(cfg, sampler, write_files=write_files)

    fronts: List[FrontSample] = []
    every = cfg.snapshot_every or max(1, int(round(1.0 / cfg.dt)))
    sim.run(observers=[_front_recorder(cfg, fronts, every)])

    z, u, du = centerline(sim.mesh, sim.state.u)
    center = 0.5 * (cfg.z0 + cfg.z1)
    distance, shift = profile_distance(reference, z - center, u)
    result = WaveResult(
        scenario=cfg.scenario, z=z, u=u, du=du,
        front=front_position(z, u, 0.5 * (cfg.u_minus + cfg.u_plus)),
        plateau=plateau_value(z, u), distance=distance, shift=shift,
        fronts=fronts, nodes=sim.mesh.n_nodes, seconds=time.perf_counter() - started,
    )
    _LOGGER.info("%s: front=%.4f plateau=%s distance=%.3e shift=%.4f", cfg.scenario.value,
                 result.front, f"{result.plateau:.4f}", result.distance, result.shift)

    if write_files:
        out = cfg.out_dir
        write_csv(CENTERLINE_HEADER, zip(z, u, du), out / "centerline.csv")
        write_csv(FRONT_HEADER, result.front_speeds(cfg.wave_speed()), out / "front.csv")
        write_csv(PROFILE_HEADER, reference.rows(), out / "tw_profile.csv")
        sim.write_summary(diagnostics={
            "front": result.front,
            "plateau": result.plateau,
            "oracle_distance": result.distance,
            "oracle_shift": result.shift,
            "front_drift": result.front_drift(),
        })
    return result


def run_dt_sweep(cfg: ScenarioConfig, dts: Sequence[float]) -> List[Tuple[float, float, float]]:
    """
    Rerun a case with each time step and return pairwise L-infinity
    differences of the final centerline profiles.
    """
    reference = oracle_profile(cfg)
    profiles = []
    for dt in dts:
        case = cfg.with_overrides(dt=float(dt), out_dir=cfg.out_dir / f"dt_{dt:g}")
        profiles.append((float(dt), run_tw(case, reference=reference).u))
    rows = [(a, b, float(np.max(np.abs(ua - ub)))) for (a, ua), (b, ub) in combinations(profiles, 2)]
    write_csv(SWEEP_HEADER, rows, cfg.out_dir / "dt_sweep.csv")
    return rows


def run_efficiency(cfg: ScenarioConfig) -> List[Tuple[str, float, int, float, float]]:
    """
    Case 1 on a fixed mesh (h = 1/16) against a moving mesh (h = 1/8,
    curvature monitor): node counts, oracle distance and wall-clock seconds.
    """
    base = cfg.with_overrides(scenario=Scenario.TW1, t_end=EFFICIENCY_T_END)
    reference = oracle_profile(base)
    runs = (
        ("fixed", base.with_overrides(h=EFFICIENCY_FIXED_H, moving=False,
                                      out_dir=cfg.out_dir / "fixed")),
        ("moving", base.with_overrides(h=EFFICIENCY_MOVING_H, moving=True,
                                       monitor=MonitorKind.CURVATURE, kappa=EFFICIENCY_KAPPA,
                                       out_dir=cfg.out_dir / "moving")),
    )
    rows = []
    for name, case in runs:
        result = run_tw(case, reference=reference)
        rows.append((name, case.h, result.nodes, result.distance, result.seconds))
    write_csv(EFFICIENCY_HEADER, rows, cfg.out_dir / "efficiency.csv")
    return rows


__all__ = [
    "EFFICIENCY_HEADER",
    "FRONT_HEADER",
    "SWEEP_HEADER",
    "FrontSample",
    "WaveResult",
    "oracle_profile",
    "run_dt_sweep",
    "run_efficiency",
    "run_tw",
]
