"""Scenario runs: convergence, traveling waves, fingering and the mesh demo."""

from filmpy.scenarios.convergence import ConvergenceRow, observed_order, run_convergence
from filmpy.scenarios.driver import Simulation
from filmpy.scenarios.finger import FingerResult, run_finger
from filmpy.scenarios.initial import initial_condition
from filmpy.scenarios.meshdemo import MeshDemoResult, run_meshdemo
from filmpy.scenarios.models import Scenario, ScenarioConfig
from filmpy.scenarios.waves import WaveResult, run_dt_sweep, run_efficiency, run_tw

__all__ = [
    "ConvergenceRow",
    "FingerResult",
    "MeshDemoResult",
    "Scenario",
    "ScenarioConfig",
    "Simulation",
    "WaveResult",
    "initial_condition",
    "observed_order",
    "run_convergence",
    "run_dt_sweep",
    "run_efficiency",
    "run_finger",
    "run_meshdemo",
    "run_tw",
]
