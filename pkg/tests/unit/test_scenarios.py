"""
Unit tests for scenario configuration, initial data, diagnostics and tiny runs.
"""

import logging
from pathlib import Path
from types import SimpleNamespace
from unittest.mock import patch

import numpy as np
import pytest

from filmpy.mesh.generate import validate_mesh
from filmpy.mesh.models import Rect, Side
from filmpy.moving.models import MonitorKind
from filmpy.scenarios import convergence
from filmpy.scenarios.commands import resolve_config
from filmpy.scenarios.convergence import observed_order, run_convergence
from filmpy.scenarios.diagnostics import (
    centerline,
    front_position,
    oscillation_indicator,
    plateau_value,
    symmetry_error,
)
from filmpy.scenarios.driver import Simulation
from filmpy.scenarios.finger import FingerResult, FingerSample, run_finger
from filmpy.scenarios.initial import (
    cosine_mode,
    cross_tanh,
    decay_factor,
    initial_condition,
    initial_sampler,
    linear_exact,
)
from filmpy.scenarios.meshdemo import run_meshdemo
from filmpy.scenarios.models import Scenario, ScenarioConfig
from filmpy.scenarios.waves import FrontSample, WaveResult, run_tw
from filmpy.shared.config import load_config
from filmpy.shared.errors import ConfigError, InvalidArgument, NonConvergence
from filmpy.shared.export import load_summary, read_csv
from filmpy.solver.models import InnerSolverKind


class TestScenario:
    """Test scenario names and aliases."""

    @pytest.mark.parametrize("text, expected", [
        ("tw1", Scenario.TW1),
        ("TW-2", Scenario.TW2),
        ("case3", Scenario.TW3),
        ("fingering", Scenario.FINGER),
        ("convergence", Scenario.CONVERGE),
        ("mesh_demo", Scenario.MESHDEMO),
    ])
    def test_aliases(self, text, expected):
        """Test spelling variants resolve to the scenario."""
        assert Scenario(text) is expected

    def test_for_case(self):
        """Test case numbers map to the traveling-wave scenarios."""
        assert Scenario.for_case(2) is Scenario.TW2
        with pytest.raises(ConfigError):
            Scenario.for_case(4)

    def test_is_wave(self):
        """Test only tw1-tw3 count as wave runs."""
        assert [s for s in Scenario if s.is_wave] == [Scenario.TW1, Scenario.TW2, Scenario.TW3]


class TestScenarioConfig:
    """Test layered configuration and validation."""

    def test_wave_defaults(self):
        """Test traveling-wave defaults."""
        cfg = ScenarioConfig.from_mapping("tw1")
        assert cfg.h == pytest.approx(1.0 / 16.0)
        assert cfg.dt == 0.1 and cfg.t_end == 100.0
        assert cfg.moving is True
        assert cfg.monitor is MonitorKind.CURVATURE
        assert cfg.kappa == 0.3
        assert cfg.bounds == Rect(0.0, 0.5, 0.0, 5.0)

    def test_layers_left_to_right(self):
        """Test later layers win and None values are skipped."""
        cfg = ScenarioConfig.from_mapping("tw1", {"dt": 0.2, "kappa": 0.4}, {"dt": 0.3, "kappa": None})
        assert cfg.dt == 0.3
        assert cfg.kappa == 0.4

    def test_key_aliases(self):
        """Test key aliases, dashes and case are normalised."""
        cfg = ScenarioConfig.from_mapping(
            "finger", {"T": 40.0, "Monitor-Kind": "arclength", "lambda0": 10.0, "inner": "sgs"}
        )
        assert cfg.t_end == 40.0
        assert cfg.monitor is MonitorKind.ARC_LENGTH
        assert cfg.wavelength == 10.0
        assert cfg.inner_solver is InnerSolverKind.SWEEPS

    def test_string_values_coerced(self):
        """Test values given as strings are converted to the field types."""
        cfg = ScenarioConfig.from_mapping("tw2", {"dt": "0.05", "moving": "no", "snapshot_every": "5"})
        assert cfg.dt == 0.05
        assert cfg.moving is False
        assert cfg.snapshot_every == 5

    @pytest.mark.parametrize("layer", [
        {"timestep": 0.1},
        {"dt": "fast"},
        {"snapshot_every": 2.5},
        {"moving": "maybe"},
        {"dt": -0.1},
        {"kappa": 1.5},
        {"model": "navier-stokes"},
        {"monitor": "hessian"},
        {"t_end": 0.01},
        {"x1": -1.0},
    ])
    def test_invalid(self, layer):
        """Test unknown keys, ill-typed and out-of-range values raise ConfigError."""
        with pytest.raises(ConfigError):
            ScenarioConfig.from_mapping("tw1", layer)

    def test_unknown_scenario(self):
        """Test an unknown scenario raises ConfigError."""
        with pytest.raises(ConfigError):
            ScenarioConfig.from_mapping("tw9")

    def test_cell_counts_integral(self):
        """Test cell counts for an exact L/h."""
        assert ScenarioConfig.from_mapping("tw1").cell_counts() == (8, 80)

    def test_cell_counts_rounded_up(self, caplog):
        """Test a non-integral L/h rounds up and logs the effective size."""
        caplog.set_level(logging.INFO, logger="filmpy")
        cfg = ScenarioConfig.from_mapping("tw1", {"h": 0.3})
        assert cfg.cell_counts() == (2, 17)
        assert "not integral" in caplog.text

    def test_finger_counts_even_in_x(self, caplog):
        """Test the mirrored finger mesh rounds an odd x count up to even."""
        caplog.set_level(logging.INFO, logger="filmpy")
        assert ScenarioConfig.from_mapping("finger").cell_counts() == (38, 75)
        assert ScenarioConfig.from_mapping("finger", {"h": 0.2}).cell_counts() == (76, 150)
        assert "even x count" in caplog.text
        plain = ScenarioConfig.from_mapping("finger", {"h": 0.2, "mirror_mesh": False})
        assert plain.cell_counts() == (75, 150)

    def test_wave_speed(self):
        """Test the frame speed defaults to the jump-condition speed."""
        assert ScenarioConfig.from_mapping("tw1").wave_speed() == pytest.approx(0.2786, abs=1e-4)
        assert ScenarioConfig.from_mapping("finger").wave_speed() == pytest.approx(1.11)
        assert ScenarioConfig.from_mapping("converge").wave_speed() == 0.0
        assert ScenarioConfig.from_mapping("tw1", {"frame_speed": 0.0}).wave_speed() == 0.0

    def test_physics(self):
        """Test the model carries the frame speed unless asked for the lab frame."""
        cfg = ScenarioConfig.from_mapping("tw3")
        assert cfg.physics().frame_speed == pytest.approx(cfg.wave_speed())
        assert cfg.physics(frame=False).frame_speed == 0.0
        assert cfg.physics().name == "thin-film"
        assert ScenarioConfig.from_mapping("converge").physics().name == "linear"

    def test_dirichlet_sides(self):
        """Test wave and finger runs pin bottom and top, others pin nothing."""
        assert ScenarioConfig.from_mapping("finger").dirichlet_sides == (Side.BOTTOM, Side.TOP)
        assert ScenarioConfig.from_mapping("meshdemo").dirichlet_sides == ()

    def test_to_dict_is_plain(self):
        """Test the dictionary form holds only plain values."""
        data = ScenarioConfig.from_mapping("finger", {"out_dir": "runs/f"}).to_dict()
        assert data["scenario"] == "finger"
        assert data["monitor"] == "curvature"
        assert data["out_dir"] == str(Path("runs/f"))
        assert data["snapshot_times"] == [0.0, 20.0, 40.0, 80.0]


class TestResolveConfig:
    """Test command-line configuration layering."""

    def _args(self, **overrides):
        values = dict(config=None, set=[], out=None, default_out="out/tw", h=None, dt=None)
        values.update(overrides)
        return SimpleNamespace(**values)

    def test_precedence(self, tmp_path):
        """Test defaults < file < --set < flags."""
        path = tmp_path / "run.toml"
        path.write_text("dt = 0.2\nkappa = 0.4\nh = 0.125\n")
        args = self._args(config=str(path), set=["dt=0.05"], h=0.25)
        cfg = resolve_config(Scenario.TW1, args)
        assert cfg.kappa == 0.4
        assert cfg.dt == 0.05
        assert cfg.h == 0.25
        assert cfg.out_dir == Path("out/tw")

    def test_out_flag(self):
        """Test --out replaces the default output directory."""
        cfg = resolve_config(Scenario.TW1, self._args(out="elsewhere"))
        assert cfg.out_dir == Path("elsewhere")

    def test_missing_file(self, tmp_path):
        """Test a missing config file raises ConfigError."""
        with pytest.raises(ConfigError):
            resolve_config(Scenario.TW1, self._args(config=str(tmp_path / "absent.toml")))

    def test_sections_rejected(self, tmp_path):
        """Test TOML tables are not accepted in run configs."""
        path = tmp_path / "run.toml"
        path.write_text("[solver]\ndt = 0.1\n")
        with pytest.raises(ConfigError):
            resolve_config(Scenario.TW1, self._args(config=str(path)))


class TestInitialConditions:
    """Test initial and closed-form fields."""

    def test_tw1_limits(self):
        """Test the single front joins u- at the bottom to u+ at the top."""
        u = initial_condition("tw1", 0.25, np.array([0.0, 2.5, 5.0]))
        assert u[0] == pytest.approx(0.3323, abs=1e-9)
        assert u[1] == pytest.approx(0.5 * (0.3323 + 0.1))
        assert u[2] == pytest.approx(0.1, abs=1e-9)

    @pytest.mark.parametrize("case", ["tw2", "tw3"])
    def test_bump_height(self, case):
        """Test the bump reaches 0.6 at the split point."""
        assert initial_condition(case, 0.0, 2.5) == pytest.approx(0.6, abs=1e-3)

    def test_bump_widths(self):
        """Test case 3 has the wider bump."""
        z = np.linspace(0.0, 5.0, 501)
        above = lambda case: np.count_nonzero(initial_condition(case, 0.0, z) > 0.5)
        assert above("tw3") > above("tw2")

    def test_independent_of_x(self):
        """Test wave initial data is constant across the width."""
        u = initial_condition("tw2", np.array([0.0, 0.25, 0.5]), 2.1)
        assert np.ptp(u) == 0.0

    def test_finger_midpoint(self):
        """Test the perturbation vanishes at a quarter wavelength."""
        assert initial_condition("finger", 3.75, 15.0) == pytest.approx(0.55)

    def test_finger_perturbation(self):
        """Test the front is displaced by the cosine perturbation."""
        at_zero = initial_condition("finger", 0.0, 15.0)
        at_half = initial_condition("finger", 7.5, 15.0)
        assert at_zero < 0.55 < at_half

    def test_custom_states(self):
        """Test states can be overridden."""
        sample = initial_sampler("tw1", u_minus=0.5, u_plus=0.2)
        assert sample(0.0, 0.0) == pytest.approx(0.5, abs=1e-9)

    def test_unknown_case(self):
        """Test unknown cases are rejected."""
        with pytest.raises(InvalidArgument):
            initial_condition("tw4", 0.0, 0.0)

    def test_decay_factor(self):
        """Test the cosine-mode decay at the convergence end time."""
        assert decay_factor(0.5, 0.0025, 0.01) == pytest.approx(0.5766, abs=1e-4)

    def test_linear_exact(self):
        """Test the exact solution starts at the cosine mode."""
        exact = linear_exact(0.5, 0.0025, 0.0)
        assert exact(0.3, 0.7) == pytest.approx(cosine_mode(0.3, 0.7))

    def test_cross_tanh(self):
        """Test the demo field is antisymmetric in each coordinate."""
        assert cross_tanh(0.2, 0.3) == pytest.approx(-cross_tanh(-0.2, 0.3))
        assert cross_tanh(0.2, 0.3) == pytest.approx(-1.0, abs=1e-6)


class TestDiagnostics:
    """Test one-dimensional diagnostics."""

    def test_front_position(self):
        """Test a linear profile crosses the level where expected."""
        z = np.linspace(0.0, 1.0, 11)
        assert front_position(z, 1.0 - z, 0.25) == pytest.approx(0.75)

    def test_front_takes_last_crossing(self):
        """Test the largest crossing is reported."""
        z = np.linspace(0.0, 3.0, 301)
        u = np.cos(np.pi * z)
        assert front_position(z, u, 0.0) == pytest.approx(2.5, abs=1e-3)

    def test_no_front(self):
        """Test no crossing gives nan."""
        assert np.isnan(front_position(np.linspace(0.0, 1.0, 5), np.ones(5), 0.5))

    def test_plateau(self):
        """Test the plateau is the flat part above 0.4."""
        z = np.linspace(0.0, 5.0, 501)
        u = initial_condition("tw2", 0.0, z)
        assert plateau_value(z, u) == pytest.approx(0.6, abs=1e-3)

    def test_no_plateau(self):
        """Test a low profile has no plateau."""
        z = np.linspace(0.0, 5.0, 101)
        assert np.isnan(plateau_value(z, np.full(101, 0.1)))

    def test_oscillation_indicator(self):
        """Test undershoots below 0 and below the precursor."""
        u = np.array([0.3, 0.05, -0.02, 0.1])
        assert oscillation_indicator(u) == pytest.approx(0.02)
        assert oscillation_indicator(u, 0.1) == pytest.approx(0.12)
        assert oscillation_indicator(np.array([0.2, 0.3])) == 0.0

    def test_centerline_and_symmetry(self, make_mesh):
        """Test the centerline samples x-independent data exactly and it is symmetric."""
        mesh = make_mesh(4, 10, bounds=(0.0, 0.5, 0.0, 5.0))
        u = mesh.nodes_x[:, 1] * 0.1
        z, values, du = centerline(mesh, u, n=50)
        assert np.allclose(values, 0.1 * z)
        assert np.allclose(du, 0.1)
        assert symmetry_error(mesh, u) == pytest.approx(0.0, abs=1e-12)

    def test_front_speeds(self):
        """Test front speeds add the frame speed to the drift."""
        result = WaveResult(Scenario.TW1, np.zeros(1), np.zeros(1), np.zeros(1), 0.0, 0.0, 0.0, 0.0,
                            fronts=[FrontSample(0.0, 2.5), FrontSample(1.0, 2.6), FrontSample(2.0, 2.7)])
        speeds = [row[2] for row in result.front_speeds(0.3)]
        assert speeds == pytest.approx([0.4, 0.4, 0.4])
        assert np.isnan(result.front_drift())

    def test_front_drift_window(self):
        """Test the drift only looks at samples inside the window."""
        fronts = [FrontSample(float(t), 2.5 + (0.1 if t == 10 else 0.0) + 0.001 * t) for t in range(0, 101, 10)]
        result = WaveResult(Scenario.TW1, np.zeros(1), np.zeros(1), np.zeros(1), 0.0, 0.0, 0.0, 0.0,
                            fronts=fronts)
        assert result.front_drift() == pytest.approx(0.05)

    def test_finger_sample_lookup(self):
        """Test the closest finger sample is returned."""
        result = FingerResult([FingerSample(0.0, 15.0, 14.8, 0.0, 0.0, 0.0),
                               FingerSample(20.0, 17.0, 15.0, 0.0, 0.0, 0.0)])
        assert result.at(19.0).gap == pytest.approx(2.0)
        with pytest.raises(InvalidArgument):
            FingerResult().at(0.0)


class TestFingerSymmetry:
    """Test the perturbed front stays mirror-symmetric on a fixed mesh."""

    def test_fixed_run_keeps_symmetry(self, tmp_path):
        """Test even initial data gives a solution symmetric about the x-midline."""
        cfg = ScenarioConfig.from_mapping("finger", {
            "h": 1.0, "t_end": 1.0, "moving": False, "snapshot_times": (0.0, 1.0), "out_dir": tmp_path,
        })
        result = run_finger(cfg, write_files=False)
        assert [s.t for s in result.samples] == pytest.approx([0.0, 1.0])
        for sample in result.samples:
            assert sample.symmetry <= 1e-6


class TestObservedOrder:
    """Test observed convergence orders."""

    def test_second_order(self):
        """Test a fourfold error drop on halving h is order 2."""
        assert observed_order(0.04, 0.01) == pytest.approx(2.0)


class TestSimulation:
    """Test the time-stepping driver on a coarse wave mesh."""

    def _config(self, tmp_path, **layer):
        values = {"h": 0.25, "t_end": 0.2, "snapshot_every": 1, "out_dir": tmp_path, "moving": False}
        values.update(layer)
        return ScenarioConfig.from_mapping("tw1", values)

    def test_fixed_run_writes_outputs(self, tmp_path):
        """Test a two-step run writes the resolved config, snapshots and summary."""
        cfg = self._config(tmp_path)
        sim = Simulation.create(cfg, initial_sampler("tw1"))
        sim.run()
        summary_path = sim.write_summary()

        assert sim.step == 2
        assert sim.t == pytest.approx(0.2)
        assert [s.step for s in sim.snapshots] == [0, 1, 2]
        assert (tmp_path / "mesh_000002.vtk").exists()
        header, rows = read_csv(tmp_path / "centerline_000001.csv")
        assert header == ["z", "u", "du"] and len(rows) == 1000
        assert load_config(tmp_path / "run_config.toml")["scenario"] == "tw1"
        summary = load_summary(summary_path)
        assert summary["stats"]["steps"] == 2
        assert summary["t"] == pytest.approx(0.2)

    def test_boundary_states_held(self, tmp_path):
        """Test the Dirichlet rows keep the end states."""
        sim = Simulation.create(self._config(tmp_path), initial_sampler("tw1"), write_files=False)
        sim.run()
        mask = sim.mesh.dirichlet_mask
        z = sim.mesh.nodes_x[mask, 1]
        expected = initial_condition("tw1", 0.0, z)
        assert np.allclose(sim.state.u[mask], expected, atol=1e-9)

    def test_no_files_when_disabled(self, tmp_path):
        """Test write_files=False leaves the directory empty."""
        sim = Simulation.create(self._config(tmp_path / "quiet"), initial_sampler("tw1"), write_files=False)
        sim.run()
        assert sim.write_summary() is None
        assert not (tmp_path / "quiet").exists()

    def test_moving_run_keeps_valid_mesh(self, tmp_path):
        """Test a moving run adapts the mesh and keeps it untangled."""
        cfg = self._config(tmp_path, moving=True, t_end=0.1)
        sim = Simulation.create(cfg, initial_sampler("tw1"), write_files=False)
        sim.run()
        assert sim.cycles
        validate_mesh(sim.mesh)
        assert np.all(np.isfinite(sim.state.u))

    def test_observers_see_each_step(self, tmp_path):
        """Test observers are called at the start and after every step."""
        seen = []
        sim = Simulation.create(self._config(tmp_path), initial_sampler("tw1"), write_files=False)
        sim.run(observers=[lambda s: seen.append(s.step)])
        assert seen == [0, 1, 2]

    def test_run_tw_rejects_other_scenarios(self, tmp_path):
        """Test run_tw needs a wave config."""
        with pytest.raises(InvalidArgument):
            run_tw(ScenarioConfig.from_mapping("finger", {"out_dir": tmp_path}))


class TestConvergence:
    """Test the convergence study driver on coarse meshes."""

    @pytest.fixture
    def cfg(self, tmp_path):
        return ScenarioConfig.from_mapping("converge", {"dt": 0.0025, "t_end": 0.005, "out_dir": tmp_path})

    def test_table(self, cfg, tmp_path, monkeypatch):
        """Test each size gets a row and later rows carry an order."""
        monkeypatch.setattr(convergence, "CONVERGENCE_SIZES", (0.25, 0.125))
        rows = run_convergence(cfg, ["fixed"])
        assert [(r.variant, r.h) for r in rows] == [("fixed", 0.25), ("fixed", 0.125)]
        assert rows[0].order is None
        assert rows[1].l2_error < rows[0].l2_error
        header, table = read_csv(tmp_path / "convergence.csv")
        assert header == ["variant", "h", "l2_error", "order"]
        assert len(table) == 2

    def test_partial_table_on_failure(self, cfg, tmp_path):
        """Test the rows computed before a failure are still written."""
        with patch("filmpy.scenarios.convergence.run_case",
                   side_effect=[0.1, NonConvergence("stalled", 5, 1.0)]):
            with pytest.raises(NonConvergence):
                run_convergence(cfg, ["fixed"])
        _, table = read_csv(tmp_path / "convergence.csv")
        assert len(table) == 1


class TestMeshDemo:
    """Test the static adaptation demo on a coarse mesh."""

    def test_outputs(self, tmp_path):
        """Test the demo writes its mesh, ratios and summary."""
        cfg = ScenarioConfig.from_mapping("meshdemo", {"h": 0.25, "max_cycles": 3, "out_dir": tmp_path})
        result = run_meshdemo(cfg)
        assert 1 <= len(result.cycles) <= 3
        assert len(result.ratios_x) == 2 and len(result.ratios_z) == 2
        validate_mesh(result.mesh)
        assert (tmp_path / "mesh.vtk").exists()
        header, _ = read_csv(tmp_path / "density_ratios.csv")
        assert header == ["index", "ratio", "axis", "strip"]
        summary = load_summary(tmp_path / "summary.yaml")
        assert summary["cycles"] == len(result.cycles)
        assert summary["x_bounds"] == pytest.approx([0.75, 4.0 / 3.0])
