"""
Time-stepping driver coupling the IMEX solver with mesh redistribution.

One :class:`Simulation` owns a mesh, a model and a field state. Each step
first redistributes the mesh (moving runs only), then advances the fields
with the quasi-Newton stepper on the new mesh. Snapshots and the run
summary land in the configured output directory.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from filmpy.assembly.models import FieldState
from filmpy.assembly.norms import integrate
from filmpy.assembly.operators import assemble_mass, assemble_stiffness
from filmpy.mesh.generate import generate_rect_mesh
from filmpy.mesh.models import TriMesh
from filmpy.moving.cycle import CycleReport, mesh_move_cycle
from filmpy.moving.monitor import compute_monitor
from filmpy.moving.smoothing import smooth_monitor
from filmpy.scenarios.diagnostics import CENTERLINE_HEADER, centerline, cfl_number
from filmpy.scenarios.models import ScenarioConfig
from filmpy.shared.config import RESOLVED_CONFIG_FILENAME, write_config
from filmpy.shared.export import write_csv, write_summary, write_vtk
from filmpy.solver.newton import StepReport, advance

_LOGGER = logging.getLogger(__name__)

SUMMARY_FILENAME = "summary.yaml"
_TIME_EPS = 1e-9

Sampler = Callable[[np.ndarray, np.ndarray], np.ndarray]
Observer = Callable[["Simulation"], None]


def mixed_auxiliary(mesh: TriMesh, u: np.ndarray, beta: float, gamma: float) -> np.ndarray:
    """``w`` solving ``M w = (beta M + gamma K) u`` for given nodal ``u``."""
    mass = assemble_mass(mesh)
    stiffness = assemble_stiffness(mesh)
    return mass.solve(beta * mass.matvec(u) + gamma * stiffness.matvec(u))


@dataclass
class Snapshot:
    step: int
    t: float
    vtk: Path
    centerline: Path


@dataclass
class RunStats:
    """Accumulated per-step diagnostics."""
    steps: int = 0
    substeps: int = 0
    newton_iterations: int = 0
    krylov_iterations: int = 0
    max_cfl: float = 0.0
    initial_mass: float = 0.0
    max_step_drift: float = 0.0
    transfer_drift: float = 0.0
    frozen_cycles: int = 0
    wall_seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class Simulation:
    """One scenario run on a structured rectangle mesh."""
    cfg: ScenarioConfig
    mesh: TriMesh
    state: FieldState
    sampler: Optional[Sampler] = None
    write_files: bool = True
    stats: RunStats = field(default_factory=RunStats)
    snapshots: List[Snapshot] = field(default_factory=list)
    cycles: List[CycleReport] = field(default_factory=list)
    step: int = 0

    @classmethod
    def create(cls, cfg: ScenarioConfig, initial: Sampler, write_files: bool = True,
               static: bool = False) -> "Simulation":
        """
        Mesh the domain, sample ``initial`` and (for moving runs) adapt the
        mesh to it, re-sampling the initial data analytically at moved nodes.

        ``static`` keeps the sampler for every later cycle too.
        """
        nx, nz = cfg.cell_counts()
        mesh = generate_rect_mesh(nx, nz, cfg.bounds, cfg.dirichlet_sides, mirrored=cfg.mirror_mesh)
        _LOGGER.info("Mesh %dx%d cells, %d nodes, %d triangles", nx, nz, mesh.n_nodes, mesh.n_tris)
        u0 = np.asarray(initial(mesh.nodes_x[:, 0], mesh.nodes_x[:, 1]), dtype=float)
        sim = cls(cfg, mesh, FieldState(u0, np.zeros_like(u0), 0.0),
                  sampler=initial if static else None, write_files=write_files)
        if write_files:
            write_config(cfg.out_dir / RESOLVED_CONFIG_FILENAME, cfg.to_dict())
        if cfg.moving:
            for _ in range(cfg.max_cycles):
                report = sim.redistribute(sampler=initial)
                if report.converged or report.frozen:
                    break
        sim.state = FieldState(sim.state.u, sim._auxiliary(sim.state.u), 0.0)
        sim.stats.initial_mass = integrate(sim.mesh, sim.state.u)
        return sim

    @property
    def model(self):
        return self.cfg.physics()

    @property
    def t(self) -> float:
        return self.state.t

    def _auxiliary(self, u: np.ndarray) -> np.ndarray:
        return mixed_auxiliary(self.mesh, u, self.cfg.beta, self.cfg.gamma)

    def redistribute(self, sampler: Optional[Sampler] = None) -> CycleReport:
        """Run one mesh-move cycle and track the mass change of the transfer."""
        sampler = sampler if sampler is not None else self.sampler
        before = integrate(self.mesh, self.state.u)
        self.mesh, self.state, report = mesh_move_cycle(
            self.mesh, self.state, self.cfg.monitor_spec(), self.cfg.smoothing(),
            self.cfg.mesh_params(), sampler=sampler,
        )
        drift = abs(integrate(self.mesh, self.state.u) - before)
        self.stats.transfer_drift += drift
        if report.frozen:
            self.stats.frozen_cycles += 1
        self.cycles.append(report)
        _LOGGER.info("Mesh cycle: iterations=%d |dxi|=%.3e min_area=%.3e tau=%g mass_change=%.3e",
                     report.iterations, report.delta_xi, report.min_area, report.tau, drift)
        return report

    def step_once(self, dt: float) -> List[StepReport]:
        """Redistribute (moving runs), then advance the fields by ``dt``."""
        if self.cfg.moving:
            self.redistribute()
        model = self.model
        before = integrate(self.mesh, self.state.u)
        self.state, reports = advance(self.mesh, model, self.state, self.cfg.stepper().with_dt(dt))
        self.step += 1

        drift = abs(integrate(self.mesh, self.state.u) - before)
        cfl = cfl_number(model, self.state.u, dt, self.mesh)
        st = self.stats
        st.steps += 1
        st.substeps += len(reports)
        st.newton_iterations += sum(r.newton_iterations for r in reports)
        st.krylov_iterations += sum(r.krylov_iterations for r in reports)
        st.max_cfl = max(st.max_cfl, cfl)
        st.max_step_drift = max(st.max_step_drift, drift)
        last = reports[-1]
        _LOGGER.info(
            "Step %d: t=%.6g newton=%d krylov=%d residual=%.3e cfl=%.4f mass_drift=%.3e",
            self.step, self.state.t, sum(r.newton_iterations for r in reports),
            sum(r.krylov_iterations for r in reports), last.residual, cfl, drift,
        )
        return reports

    def snapshot_due(self) -> bool:
        every = self.cfg.snapshot_every
        if every and self.step % every == 0:
            return True
        half = 0.5 * self.cfg.dt
        return any(abs(self.state.t - t) <= half for t in self.cfg.snapshot_times)

    def snapshot(self) -> Optional[Snapshot]:
        """Write ``mesh_<step>.vtk`` and ``centerline_<step>.csv``."""
        if not self.write_files:
            return None
        out = self.cfg.out_dir
        monitor = smooth_monitor(self.mesh, compute_monitor(self.mesh, self.state.u, self.cfg.monitor_spec()),
                                 self.cfg.smoothing())
        vtk = write_vtk(self.mesh.nodes_x, self.mesh.tris, out / f"mesh_{self.step:06d}.vtk",
                        {"u": self.state.u, "w": self.state.w, "monitor": monitor},
                        title=f"{self.cfg.scenario.value} t={self.state.t:.6g}")
        z, u, du = centerline(self.mesh, self.state.u)
        line = write_csv(CENTERLINE_HEADER, zip(z, u, du), out / f"centerline_{self.step:06d}.csv")
        snap = Snapshot(self.step, self.state.t, vtk, line)
        self.snapshots.append(snap)
        return snap

    def run(self, observers: Optional[List[Observer]] = None, t_end: Optional[float] = None) -> "Simulation":
        """Step to ``t_end`` (default ``cfg.t_end``); observers see every accepted step."""
        observers = observers or []
        t_end = self.cfg.t_end if t_end is None else t_end
        started = time.perf_counter()
        already = bool(self.snapshots) and self.snapshots[-1].step == self.step
        if self.snapshot_due() and not already:
            self.snapshot()
        for observer in observers:
            observer(self)
        while self.state.t < t_end - _TIME_EPS * max(1.0, t_end):
            dt = min(self.cfg.dt, t_end - self.state.t)
            self.step_once(dt)
            if self.snapshot_due():
                self.snapshot()
            for observer in observers:
                observer(self)
        self.stats.wall_seconds += time.perf_counter() - started
        return self

    def mass_drift(self) -> float:
        """Relative change of the total mass since the start."""
        scale = max(abs(self.stats.initial_mass), 1e-300)
        return abs(integrate(self.mesh, self.state.u) - self.stats.initial_mass) / scale

    def summary(self, **extra) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "scenario": self.cfg.scenario.value,
            "t": self.state.t,
            "mesh": self.mesh.summary(),
            "moving": self.cfg.moving,
            "frame_speed": self.cfg.wave_speed(),
            "stats": self.stats.to_dict(),
            "relative_mass_drift": self.mass_drift(),
            "snapshots": [{"step": s.step, "t": s.t, "vtk": s.vtk.name} for s in self.snapshots],
        }
        data.update(extra)
        return data

    def write_summary(self, **extra) -> Optional[Path]:
        if not self.write_files:
            return None
        return write_summary(self.cfg.out_dir / SUMMARY_FILENAME, self.summary(**extra))


__all__ = ["RunStats", "SUMMARY_FILENAME", "Simulation", "Snapshot", "mixed_auxiliary"]
