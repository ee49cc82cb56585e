"""Spatial convergence study on the linear equation with a closed-form solution."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from filmpy.assembly.norms import l2_error
from filmpy.moving.models import MonitorKind
from filmpy.scenarios.driver import Simulation
from filmpy.scenarios.initial import cosine_mode, linear_exact
from filmpy.scenarios.models import ScenarioConfig
from filmpy.shared.errors import FilmError
from filmpy.shared.export import write_csv

_LOGGER = logging.getLogger(__name__)

CONVERGENCE_SIZES = (0.1, 0.05, 0.025)
FINE_SIZE = 0.0125
CONVERGENCE_HEADER = ("variant", "h", "l2_error", "order")
CONVERGENCE_FILENAME = "convergence.csv"

FIXED = "fixed"
# variant name -> monitor (None = fixed mesh)
VARIANTS: Tuple[Tuple[str, Optional[MonitorKind]], ...] = (
    (FIXED, None),
    (MonitorKind.ARC_LENGTH.value, MonitorKind.ARC_LENGTH),
    (MonitorKind.CURVATURE.value, MonitorKind.CURVATURE),
)


@dataclass
class ConvergenceRow:
    variant: str
    h: float
    l2_error: float
    order: Optional[float] = None

    def as_row(self):
        return (self.variant, self.h, self.l2_error, "" if self.order is None else self.order)


def observed_order(coarse_error: float, fine_error: float, ratio: float = 2.0) -> float:
    """``log(e_coarse / e_fine) / log(ratio)``."""
    return math.log(coarse_error / fine_error) / math.log(ratio)


def convergence_sizes(cfg: ScenarioConfig) -> Tuple[float, ...]:
    return CONVERGENCE_SIZES + ((FINE_SIZE,) if cfg.fine else ())


def run_case(cfg: ScenarioConfig) -> float:
    """L2 error at ``cfg.t_end`` of one mesh/monitor combination."""
    sim = Simulation.create(cfg, cosine_mode, write_files=False)
    sim.run()
    exact = linear_exact(cfg.beta, cfg.gamma, sim.t)
    return l2_error(sim.mesh, sim.state.u, exact)


def run_convergence(cfg: ScenarioConfig, variants: Sequence[str] = None) -> List[ConvergenceRow]:
    """
    Errors and observed orders for each mesh size, on a fixed mesh and on
    moving meshes with both monitors.

    The table is written to ``convergence.csv`` even when a run fails; the
    failure is re-raised afterwards.
    """
    wanted = set(variants) if variants else {name for name, _ in VARIANTS}
    rows: List[ConvergenceRow] = []
    path = cfg.out_dir / CONVERGENCE_FILENAME
    try:
        for name, monitor in VARIANTS:
            if name not in wanted:
                continue
            previous: Optional[float] = None
            for h in convergence_sizes(cfg):
                case = cfg.with_overrides(h=h, moving=monitor is not None,
                                          monitor=monitor or cfg.monitor)
                error = run_case(case)
                order = observed_order(previous, error) if previous else None
                rows.append(ConvergenceRow(name, h, error, order))
                _LOGGER.info("Convergence %s h=%g: L2 error=%.4e order=%s", name, h, error,
                             "-" if order is None else f"{order:.4f}")
                previous = error
    except FilmError:
        _LOGGER.error("Convergence study aborted after %d runs; writing partial table", len(rows))
        raise
    finally:
        write_csv(CONVERGENCE_HEADER, (row.as_row() for row in rows), path)
    return rows


__all__ = [
    "CONVERGENCE_HEADER",
    "CONVERGENCE_SIZES",
    "ConvergenceRow",
    "FINE_SIZE",
    "VARIANTS",
    "observed_order",
    "run_case",
    "run_convergence",
]
