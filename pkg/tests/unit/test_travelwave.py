"""
Unit tests for the traveling-wave oracle: shock speeds, profiles and phase curves.
"""

import json
from dataclasses import replace
from types import SimpleNamespace

import numpy as np
import pytest

from filmpy.assembly.models import PhysicsModel
from filmpy.shared.errors import InvalidArgument
from filmpy.shared.export import read_csv
from filmpy.shared.output import OutputMode, set_output_mode
from filmpy.travelwave.bvp import first_integral_residual, profile_distance, solve_tw_profile
from filmpy.travelwave.commands import cmd_oracle, speed_report, write_profile
from filmpy.travelwave.models import TWProblem, TWProfile
from filmpy.travelwave.phase import is_simple_curve, phase_plane
from filmpy.travelwave.speed import rankine_hugoniot_speed, wave_speeds


@pytest.fixture
def tanh_profile():
    zeta = np.linspace(-2.0, 2.0, 401)
    u = 0.2 - 0.1 * np.tanh(zeta / 0.2)
    du = np.gradient(u, zeta)
    return TWProfile(zeta, u, du, np.gradient(du, zeta), speed=0.25)


class TestShockSpeeds:
    """Test jump-condition speeds."""

    @pytest.mark.parametrize("u_minus, u_plus, expected", [
        (0.3323, 0.1, 0.2786),
        (0.3323, 0.6, 0.2625),
        (0.6, 0.1, 0.2700),
    ])
    def test_thin_film_speeds(self, u_minus, u_plus, expected):
        """Test the bump-case speeds of the film flux."""
        speed = rankine_hugoniot_speed(PhysicsModel.thin_film(), u_minus, u_plus)
        assert speed == pytest.approx(expected, abs=5e-4)

    def test_fingering_speed(self):
        """Test the cubic flux speed between 1 and 0.1."""
        assert rankine_hugoniot_speed(PhysicsModel.fingering(), 1.0, 0.1) == pytest.approx(0.999 / 0.9)

    def test_plain_flux_callable(self):
        """Test a bare flux function is accepted."""
        assert rankine_hugoniot_speed(lambda u: u ** 2, 0.0, 2.0) == pytest.approx(2.0)

    def test_symmetric_in_states(self):
        """Test swapping the states leaves the speed unchanged."""
        film = PhysicsModel.thin_film()
        assert rankine_hugoniot_speed(film, 0.1, 0.6) == pytest.approx(rankine_hugoniot_speed(film, 0.6, 0.1))

    def test_equal_states(self):
        """Test equal states are rejected."""
        with pytest.raises(InvalidArgument):
            rankine_hugoniot_speed(PhysicsModel.thin_film(), 0.3, 0.3)

    def test_wave_speeds_chain(self):
        """Test consecutive states give one speed per jump."""
        speeds = wave_speeds(PhysicsModel.thin_film(), [0.3323, 0.6, 0.1])
        assert len(speeds) == 2
        assert speeds[0] < speeds[1]

    def test_speed_report(self):
        """Test the report lists the four quoted speeds in order."""
        report = speed_report()
        assert [name for name, _ in report][0] == "s (u-, u+)"
        assert [round(value, 4) for _, value in report][:3] == pytest.approx([0.2786, 0.2625, 0.2700], abs=1e-4)
        assert report[-1][1] == pytest.approx(1.11)


class TestProblem:
    """Test traveling-wave problem validation."""

    def test_equal_states(self):
        """Test identical end states are rejected."""
        with pytest.raises(InvalidArgument):
            TWProblem(PhysicsModel.thin_film(), 0.2, 0.2)

    def test_small_grid(self):
        """Test grids below 100 cells are rejected."""
        with pytest.raises(InvalidArgument):
            TWProblem(PhysicsModel.thin_film(), 0.3323, 0.1, n_ode=50)

    def test_empty_interval(self):
        """Test reversed intervals are rejected."""
        with pytest.raises(InvalidArgument):
            TWProblem(PhysicsModel.thin_film(), 0.3323, 0.1, interval=(1.0, -1.0))

    def test_mobility_must_be_positive(self):
        """Test states where K vanishes are rejected."""
        with pytest.raises(InvalidArgument):
            TWProblem(PhysicsModel.thin_film(), 0.3, 0.0)

    def test_grid(self):
        """Test the grid spans the interval with n_ode cells."""
        zeta = TWProblem(PhysicsModel.thin_film(), 0.3323, 0.1, n_ode=200).grid()
        assert zeta.shape == (201,)
        assert zeta[0] == -2.5 and zeta[-1] == 2.5


class TestProfileSolve:
    """Test the collocation solve of the film profile."""

    @pytest.fixture(scope="class")
    def solved(self):
        problem = TWProblem(PhysicsModel.thin_film(), 0.3323, 0.1, n_ode=1000)
        speed = rankine_hugoniot_speed(problem.model, 0.3323, 0.1)
        return problem, solve_tw_profile(problem, speed)

    def test_boundary_values(self, solved):
        """Test the profile meets both end states."""
        problem, profile = solved
        assert profile.u[0] == pytest.approx(problem.u_minus, abs=1e-8)
        assert profile.u[-1] == pytest.approx(problem.u_plus, abs=1e-8)
        assert profile.d2u[0] == pytest.approx(0.0, abs=1e-8)

    def test_phase_condition(self, solved):
        """Test the profile passes the midpoint state at the guess centre."""
        problem, profile = solved
        centre = int(np.argmin(np.abs(profile.zeta)))
        assert profile.u[centre] == pytest.approx(problem.midpoint, abs=1e-8)

    def test_converged(self, solved):
        """Test the Newton residual is below tolerance."""
        problem, profile = solved
        assert profile.residual <= problem.newton_tol
        assert profile.iterations >= 1

    def test_first_integral(self, solved):
        """Test the once-integrated profile equation holds to ten times the Newton tolerance."""
        problem, profile = solved
        assert abs(profile.bordering) <= 10 * problem.newton_tol
        assert first_integral_residual(problem, profile) <= 10 * problem.newton_tol

    def test_stays_positive(self, solved):
        """Test the film thickness stays positive."""
        _, profile = solved
        assert profile.u.min() > 0.0

    def test_ridge_and_dip(self, solved):
        """Test the profile overshoots u- behind the front and dips below u+ ahead of it."""
        problem, profile = solved
        assert profile.u.max() > problem.u_minus
        assert profile.u.min() < problem.u_plus

    def test_phase_endpoints(self, solved):
        """Test the phase curve starts and ends near the rest states."""
        problem, profile = solved
        points = phase_plane(profile)
        assert points[0][0] == pytest.approx(problem.u_minus, abs=1e-8)
        assert points[-1][0] == pytest.approx(problem.u_plus, abs=1e-8)
        assert abs(points[0][1]) < 1e-2 and abs(points[-1][1]) < 1e-2

    def test_restart_from_solution(self, solved):
        """Test a converged iterate passed as a guess needs no Newton steps."""
        problem, profile = solved
        x = np.empty(3 * profile.zeta.shape[0] + 1)
        x[0:-1:3], x[1:-1:3], x[2:-1:3] = profile.u, profile.du, profile.d2u
        x[-1] = profile.bordering
        again = solve_tw_profile(problem, profile.speed, guess=x)
        assert again.iterations == 0


class TestTranslationRobustness:
    """Test the profile does not depend on where the initial front is placed."""

    def test_shifted_guess_gives_translated_profile(self):
        """Test moving the guess by 0.5 reproduces the profile up to that translation."""
        problem = TWProblem(PhysicsModel.thin_film(), 0.3323, 0.1, interval=(-5.0, 5.0), n_ode=2000)
        speed = rankine_hugoniot_speed(problem.model, 0.3323, 0.1)
        centred = solve_tw_profile(problem, speed)
        moved = solve_tw_profile(replace(problem, guess_center=0.5), speed)
        distance, shift = profile_distance(centred, moved.zeta, moved.u)
        assert shift == pytest.approx(0.5, abs=1e-6)
        assert distance <= 1e-6


class TestProfileDistance:
    """Test shift-aligned profile comparison."""

    def test_recovers_shift(self, tanh_profile):
        """Test a shifted copy is matched with the applied shift."""
        distance, shift = profile_distance(tanh_profile, tanh_profile.zeta, tanh_profile.shifted(0.3))
        assert shift == pytest.approx(0.3, abs=1e-3)
        assert distance < 1e-6

    def test_identical(self, tanh_profile):
        """Test a profile is at distance zero from itself."""
        distance, shift = profile_distance(tanh_profile, tanh_profile.zeta, tanh_profile.u)
        assert distance == pytest.approx(0.0, abs=1e-12)
        assert shift == pytest.approx(0.0, abs=1e-3)

    def test_offset_reported(self, tanh_profile):
        """Test a constant offset shows up as the distance."""
        distance, _ = profile_distance(tanh_profile, tanh_profile.zeta, tanh_profile.u + 0.01)
        assert distance == pytest.approx(0.01, abs=1e-3)


class TestPhasePlane:
    """Test phase curves and the simple-curve check."""

    def test_phase_pairs(self, tanh_profile):
        """Test phase points are (u, u') in zeta order."""
        points = phase_plane(tanh_profile)
        assert len(points) == tanh_profile.zeta.shape[0]
        assert points[0] == (float(tanh_profile.u[0]), float(tanh_profile.du[0]))

    def test_constant_profile(self):
        """Test a flat profile maps to (c, 0) pairs."""
        zeta = np.linspace(0.0, 1.0, 5)
        flat = TWProfile(zeta, np.full(5, 0.3), np.zeros(5), np.zeros(5), speed=0.0)
        assert phase_plane(flat) == [(0.3, 0.0)] * 5

    def test_monotone_front_is_simple(self, tanh_profile):
        """Test a monotone front traces a simple curve."""
        assert is_simple_curve(phase_plane(tanh_profile))

    def test_open_square_is_simple(self):
        """Test three sides of a square do not cross."""
        assert is_simple_curve([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])

    def test_bowtie_crosses(self):
        """Test a bow-tie polyline is not simple."""
        assert not is_simple_curve([(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)])

    def test_sub_resolution_wiggle_ignored(self):
        """Test crossings below the resolution are merged away."""
        wiggle = [(1.0, 0.0), (1.0 + 1e-5, 1e-5), (1.0 + 1e-5, -1e-5), (1.0, 1e-5)]
        assert is_simple_curve([(0.0, 0.0), (0.5, 0.0)] + wiggle)


class TestOracleCommand:
    """Test the oracle command."""

    def _args(self, tmp_path, **overrides):
        values = dict(
            u_minus=0.3323, u_plus=0.1, model='thin-film', gamma=None, beta=0.0,
            interval=(-2.5, 2.5), n_ode=1000, speed=None, out=str(tmp_path / "oracle"),
            speeds=False, verbose=False,
        )
        values.update(overrides)
        return SimpleNamespace(**values)

    def test_speeds_only(self, tmp_path, capsys):
        """Test --speeds prints the table without solving or writing files."""
        set_output_mode(OutputMode.AGENT)
        cmd_oracle(self._args(tmp_path, speeds=True))
        payload = json.loads(capsys.readouterr().out)
        assert payload["count"] == 4
        assert payload["items"][0]["value"] == pytest.approx(0.2786, abs=1e-4)
        assert not (tmp_path / "oracle").exists()

    def test_writes_profile(self, tmp_path, capsys):
        """Test a full solve writes both CSV files and the run log."""
        cmd_oracle(self._args(tmp_path))
        out = capsys.readouterr().out
        assert "[OK] Profile written" in out
        header, rows = read_csv(tmp_path / "oracle" / "profile.csv")
        assert header == ["zeta", "u", "du", "d2u"]
        assert len(rows) == 1001
        assert (tmp_path / "oracle" / "phase_plane.csv").exists()
        assert (tmp_path / "oracle" / "run.log").exists()

    def test_write_profile(self, tmp_path, tanh_profile):
        """Test profile files round-trip the samples."""
        profile_path, phase_path = write_profile(tanh_profile, tmp_path)
        _, rows = read_csv(profile_path)
        assert np.array_equal([row[1] for row in rows], tanh_profile.u)
        header, _ = read_csv(phase_path)
        assert header == ["u", "du"]
