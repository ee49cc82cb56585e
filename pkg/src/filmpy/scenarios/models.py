"""
Scenario configuration: defaults per experiment, validation and derived solver settings.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

from filmpy.assembly.models import PhysicsModel
from filmpy.mesh.models import Rect, Side
from filmpy.moving.models import MonitorKind, MonitorSpec, MovingMeshParams, SmoothingParams
from filmpy.shared.errors import ConfigError, FilmError
from filmpy.solver.models import InnerSolverKind, TimeStepperConfig
from filmpy.travelwave.speed import rankine_hugoniot_speed

_LOGGER = logging.getLogger(__name__)

CELL_COUNT_TOL = 1e-9


class Scenario(Enum):
    """Experiments the CLI can run."""
    CONVERGE = "converge"
    TW1 = "tw1"
    TW2 = "tw2"
    TW3 = "tw3"
    FINGER = "finger"
    MESHDEMO = "meshdemo"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            normalized = value.strip().lower().replace("-", "").replace("_", "")
            aliases = {"convergence": cls.CONVERGE, "case1": cls.TW1, "case2": cls.TW2,
                       "case3": cls.TW3, "fingering": cls.FINGER}
            if normalized in aliases:
                return aliases[normalized]
            for member in cls:
                if member.value == normalized:
                    return member
        return None

    @property
    def is_wave(self) -> bool:
        return self in (Scenario.TW1, Scenario.TW2, Scenario.TW3)

    @classmethod
    def for_case(cls, case: int) -> "Scenario":
        try:
            return {1: cls.TW1, 2: cls.TW2, 3: cls.TW3}[int(case)]
        except (KeyError, ValueError):
            raise ConfigError(f"Traveling-wave case must be 1, 2 or 3 (got {case})") from None


_WAVE_DEFAULTS: Dict[str, Any] = {
    "h": 1.0 / 16.0, "dt": 0.1, "t_end": 100.0, "moving": True,
    "monitor": MonitorKind.CURVATURE, "kappa": 0.3,
    "x0": 0.0, "x1": 0.5, "z0": 0.0, "z1": 5.0,
    "model": "thin-film", "beta": 0.0, "gamma": 0.001,
    "u_minus": 0.3323, "u_plus": 0.1,
}

SCENARIO_DEFAULTS: Dict[Scenario, Dict[str, Any]] = {
    Scenario.CONVERGE: {
        "h": 0.1, "dt": 1e-5, "t_end": 0.01, "moving": False,
        "monitor": MonitorKind.ARC_LENGTH, "kappa": 0.5,
        "x0": 0.0, "x1": 1.0, "z0": 0.0, "z1": 1.0,
        "model": "linear", "beta": 0.5, "gamma": 0.0025,
        "snapshot_every": 0,
    },
    Scenario.TW1: dict(_WAVE_DEFAULTS),
    Scenario.TW2: dict(_WAVE_DEFAULTS),
    Scenario.TW3: dict(_WAVE_DEFAULTS),
    Scenario.FINGER: {
        "h": 0.4, "dt": 0.1, "t_end": 80.0, "moving": True,
        "monitor": MonitorKind.CURVATURE, "kappa": 0.5,
        "x0": 0.0, "x1": 15.0, "z0": 0.0, "z1": 30.0,
        "model": "fingering", "beta": 0.0, "gamma": 1.0,
        "u_minus": 1.0, "u_plus": 0.1, "mobility_floor": 1e-6,
        "mirror_mesh": True,
        "snapshot_times": (0.0, 20.0, 40.0, 80.0),
    },
    Scenario.MESHDEMO: {
        "h": 0.025, "dt": 1.0, "t_end": 1.0, "moving": True,
        "monitor": MonitorKind.ARC_LENGTH, "kappa": 0.5,
        "sigma_xi": 3.0, "sigma_eta": 1.0,
        "x0": -0.5, "x1": 0.5, "z0": -0.5, "z1": 0.5,
        "model": "linear", "max_cycles": 40,
    },
}

MODELS = ("thin-film", "fingering", "linear")

_ALIASES = {
    "t": "t_end",
    "end_time": "t_end",
    "monitor_kind": "monitor",
    "out": "out_dir",
    "a0": "amplitude",
    "lambda0": "wavelength",
    "inner": "inner_solver",
}


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Resolved parameters of one scenario run.

    ``frame_speed`` of None means the jump-condition speed of
    ``(u_minus, u_plus)`` for wave and finger runs, 0 otherwise.
    """
    scenario: Scenario
    h: float
    dt: float
    t_end: float
    moving: bool = False
    monitor: MonitorKind = MonitorKind.ARC_LENGTH
    kappa: float = 0.5
    sigma_xi: float = 1.0
    sigma_eta: float = 1.0
    snapshot_every: int = 100
    snapshot_times: Tuple[float, ...] = ()
    out_dir: Path = Path("out")
    x0: float = 0.0
    x1: float = 1.0
    z0: float = 0.0
    z1: float = 1.0
    model: str = "thin-film"
    beta: float = 0.0
    gamma: float = 0.001
    frame_speed: Optional[float] = None
    mobility_floor: float = 0.0
    u_minus: float = 0.3323
    u_plus: float = 0.1
    amplitude: float = 0.2
    wavelength: float = 15.0
    newton_tol: float = 1e-6
    krylov_tol: float = 1e-8
    inner_solver: InnerSolverKind = InnerSolverKind.DIRECT
    max_outer_iter: int = 5
    max_cycles: int = 40
    fine: bool = False
    mirror_mesh: bool = False

    def __post_init__(self):
        try:
            object.__setattr__(self, "scenario", Scenario(self.scenario))
        except ValueError:
            raise ConfigError(
                f"Unknown scenario '{self.scenario}' (use one of: "
                f"{', '.join(s.value for s in Scenario)})"
            ) from None
        try:
            object.__setattr__(self, "monitor", MonitorKind.parse(self.monitor))
            object.__setattr__(self, "inner_solver", InnerSolverKind.parse(self.inner_solver))
        except FilmError as exc:
            raise ConfigError(str(exc)) from exc
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))
        self._validate()

    def _validate(self):
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be > 0 (got {self.dt})")
        if not self.t_end >= self.dt:
            raise ConfigError(f"T must be >= dt (got T={self.t_end}, dt={self.dt})")
        if not self.h > 0.0:
            raise ConfigError(f"h must be > 0 (got {self.h})")
        if not 0.0 <= self.kappa <= 1.0:
            raise ConfigError(f"kappa must lie in [0, 1] (got {self.kappa})")
        if self.sigma_xi < 0.0 or self.sigma_eta < 0.0:
            raise ConfigError("sigma_xi and sigma_eta must be >= 0")
        if not (self.x1 > self.x0 and self.z1 > self.z0):
            raise ConfigError(f"Empty domain [{self.x0}, {self.x1}] x [{self.z0}, {self.z1}]")
        if self.model not in MODELS:
            raise ConfigError(f"Unknown model '{self.model}' (use one of: {', '.join(MODELS)})")
        if self.snapshot_every < 0:
            raise ConfigError(f"snapshot_every must be >= 0 (got {self.snapshot_every})")
        if self.max_outer_iter < 1 or self.max_cycles < 1:
            raise ConfigError("max_outer_iter and max_cycles must be >= 1")
        if not 0.0 < self.newton_tol < 1.0 or not 0.0 < self.krylov_tol < 1.0:
            raise ConfigError("newton_tol and krylov_tol must lie in (0, 1)")

    @classmethod
    def from_mapping(cls, scenario, *layers: Mapping[str, Any]) -> "ScenarioConfig":
        """
        Build a config from scenario defaults overlaid with ``layers`` (left to right).

        Keys are case-insensitive and may use dashes. None values are skipped.

        Raises:
            ConfigError: Unknown key, ill-typed value or failed validation.
        """
        try:
            scenario = Scenario(scenario)
        except ValueError:
            raise ConfigError(f"Unknown scenario '{scenario}'") from None
        values: Dict[str, Any] = dict(SCENARIO_DEFAULTS[scenario])
        known = {f.name: f for f in fields(cls)}
        for layer in layers:
            for raw_key, value in layer.items():
                if value is None:
                    continue
                key = _ALIASES.get(_normalize_key(raw_key), _normalize_key(raw_key))
                if key not in known:
                    raise ConfigError(f"Unknown configuration key '{raw_key}'")
                if key == "scenario":
                    continue
                values[key] = _coerce(key, value, known[key].type)
        return cls(scenario=scenario, **values)

    def with_overrides(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)

    @property
    def bounds(self) -> Rect:
        return Rect(self.x0, self.x1, self.z0, self.z1)

    def cell_counts(self) -> Tuple[int, int]:
        """
        ``ceil(L / h)`` per axis, so ``h`` is the largest admissible cell size.

        A mirrored mesh rounds the x count up to the next even number.
        """
        counts = []
        for length in (self.bounds.width, self.bounds.height):
            ratio = length / self.h
            count = max(1, int(math.ceil(ratio - CELL_COUNT_TOL)))
            if abs(ratio - round(ratio)) > CELL_COUNT_TOL:
                _LOGGER.info("L/h = %.6g is not integral; using %d cells (h = %.6g)",
                             ratio, count, length / count)
            counts.append(count)
        if self.mirror_mesh and counts[0] % 2:
            _LOGGER.info("Mirrored mesh needs an even x count; using %d cells", counts[0] + 1)
            counts[0] += 1
        return counts[0], counts[1]

    @property
    def dirichlet_sides(self) -> Tuple[Side, ...]:
        if self.scenario.is_wave or self.scenario is Scenario.FINGER:
            return (Side.BOTTOM, Side.TOP)
        return ()

    def wave_speed(self) -> float:
        if self.frame_speed is not None:
            return float(self.frame_speed)
        if self.scenario.is_wave or self.scenario is Scenario.FINGER:
            return rankine_hugoniot_speed(self.physics(frame=False), self.u_minus, self.u_plus)
        return 0.0

    def physics(self, frame: bool = True) -> PhysicsModel:
        """Flux/mobility model, written in the moving frame unless ``frame`` is False."""
        if self.model == "linear":
            model = PhysicsModel.linear(beta=self.beta, gamma=self.gamma)
        elif self.model == "fingering":
            model = PhysicsModel.fingering(self.beta, self.gamma, mobility_floor=self.mobility_floor)
        else:
            model = PhysicsModel.thin_film(self.beta, self.gamma, mobility_floor=self.mobility_floor)
        return model.with_frame_speed(self.wave_speed()) if frame else model

    def stepper(self) -> TimeStepperConfig:
        return TimeStepperConfig(dt=self.dt, newton_tol=self.newton_tol,
                                 krylov_tol=self.krylov_tol, inner_solver=self.inner_solver)

    def monitor_spec(self) -> MonitorSpec:
        return MonitorSpec(self.monitor, self.kappa)

    def smoothing(self) -> SmoothingParams:
        return SmoothingParams(self.sigma_xi, self.sigma_eta)

    def mesh_params(self) -> MovingMeshParams:
        return MovingMeshParams(max_outer_iter=self.max_outer_iter)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["scenario"] = self.scenario.value
        data["monitor"] = self.monitor.value
        data["inner_solver"] = self.inner_solver.value
        data["out_dir"] = str(self.out_dir)
        data["snapshot_times"] = list(self.snapshot_times)
        return data


def _normalize_key(key: str) -> str:
    return str(key).strip().replace("-", "_").lower()


def _coerce(key: str, value: Any, annotation: str) -> Any:
    """Convert a config value to the field's type, rejecting ill-typed input."""
    annotation = str(annotation)
    try:
        if annotation == "bool":
            if isinstance(value, bool):
                return value
            text = str(value).strip().lower()
            if text in ("true", "yes", "1", "on"):
                return True
            if text in ("false", "no", "0", "off"):
                return False
            raise ValueError(value)
        if annotation == "int":
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if annotation in ("float", "Optional[float]"):
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        if annotation.startswith("Tuple[float"):
            items = value if isinstance(value, (list, tuple)) else str(value).split(",")
            return tuple(float(item) for item in items)
        if annotation == "Path":
            return Path(str(value))
        if annotation == "str":
            return str(value).strip().lower()
        return value
    except (TypeError, ValueError):
        raise ConfigError(f"Invalid value for '{key}': {value!r} (expected {annotation})") from None


__all__ = ["SCENARIO_DEFAULTS", "Scenario", "ScenarioConfig"]
