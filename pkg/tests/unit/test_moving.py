"""
Unit tests for monitor construction, smoothing, the harmonic map and mesh motion.
"""

import numpy as np
import pytest

from filmpy.assembly.models import FieldState
from filmpy.assembly.operators import lumped_mass
from filmpy.mesh.generate import signed_areas, validate_mesh
from filmpy.mesh.models import Frame, Side
from filmpy.moving.cycle import guarded_move, mesh_move_cycle, physical_displacement
from filmpy.moving.harmonic import equidistribute, redistribute_boundary, solve_harmonic_map
from filmpy.moving.models import MonitorKind, MonitorSpec, MovingMeshParams, SmoothingParams
from filmpy.moving.monitor import compute_monitor, recover_gradient, recover_laplacian
from filmpy.moving.quality import density_ratio_report, ratio_bounds, ratio_extremes
from filmpy.moving.smoothing import smooth_monitor
from filmpy.moving.transfer import interpolate_field
from filmpy.shared.errors import InvalidArgument


def front(x, z):
    return np.tanh(20.0 * (np.asarray(x) - 0.5))


class TestMonitor:
    """Test recovered derivatives and monitor functions."""

    def test_recovered_gradient_exact_for_linear(self, unit_mesh):
        """Test gradient recovery reproduces linear fields everywhere."""
        u = 2.0 * unit_mesh.nodes_x[:, 0] - 3.0 * unit_mesh.nodes_x[:, 1]
        assert np.allclose(recover_gradient(unit_mesh, u), [2.0, -3.0])

    def test_recovered_laplacian_of_quadratic(self, make_mesh):
        """Test the recovered Laplacian of x^2 + z^2 is exact two cells away from the boundary."""
        mesh = make_mesh(16, 16)
        x, z = mesh.nodes_x[:, 0], mesh.nodes_x[:, 1]
        lap = recover_laplacian(mesh, x ** 2 + z ** 2)
        inner = (np.minimum(x, 1.0 - x) > 0.12) & (np.minimum(z, 1.0 - z) > 0.12)
        assert inner.any()
        assert np.allclose(lap[inner], 4.0, atol=1e-8)

    def test_kappa_zero_is_constant(self, unit_mesh):
        """Test kappa = 0 gives a constant monitor."""
        u = front(unit_mesh.nodes_x[:, 0], unit_mesh.nodes_x[:, 1])
        monitor = compute_monitor(unit_mesh, u, MonitorSpec(MonitorKind.ARC_LENGTH, kappa=0.0))
        assert np.allclose(monitor, monitor[0])
        assert monitor[0] > 0.0

    def test_flat_field_gives_ones(self, unit_mesh):
        """Test a constant field falls back to M = 1."""
        monitor = compute_monitor(unit_mesh, np.full(unit_mesh.n_nodes, 0.3), MonitorSpec())
        assert np.all(monitor == 1.0)

    @pytest.mark.parametrize("kind", list(MonitorKind))
    def test_positive_and_largest_at_layer(self, unit_mesh, kind):
        """Test the monitor is positive and peaks near the steep layer."""
        u = front(unit_mesh.nodes_x[:, 0], unit_mesh.nodes_x[:, 1])
        monitor = compute_monitor(unit_mesh, u, MonitorSpec(kind, kappa=0.5))
        assert np.all(monitor > 0.0)
        peak_x = unit_mesh.nodes_x[np.argmax(monitor), 0]
        assert abs(peak_x - 0.5) <= 0.25

    def test_kind_aliases(self):
        """Test monitor kinds accept spelling variants."""
        assert MonitorKind.parse("arclength") is MonitorKind.ARC_LENGTH
        assert MonitorKind.parse("Curvature") is MonitorKind.CURVATURE
        with pytest.raises(InvalidArgument):
            MonitorKind.parse("hessian")

    def test_kappa_range(self):
        """Test kappa outside [0, 1] is rejected."""
        with pytest.raises(InvalidArgument):
            MonitorSpec(kappa=1.5)


class TestSmoothing:
    """Test the implicit monitor smoother."""

    @pytest.fixture
    def spike(self, unit_mesh):
        monitor = np.ones(unit_mesh.n_nodes)
        monitor[unit_mesh.node_index(4, 4)] = 10.0
        return monitor

    def test_sigma_zero_is_identity(self, unit_mesh, spike):
        """Test zero smoothing returns the monitor unchanged."""
        smoothed = smooth_monitor(unit_mesh, spike, SmoothingParams(0.0, 0.0))
        assert np.array_equal(smoothed, spike)

    def test_maximum_principle(self, unit_mesh, spike):
        """Test smoothed values stay within the original range."""
        smoothed = smooth_monitor(unit_mesh, spike, SmoothingParams(3.0, 3.0))
        assert smoothed.min() >= spike.min() - 1e-12
        assert smoothed.max() <= spike.max() + 1e-12

    def test_spreads_the_spike(self, unit_mesh, spike):
        """Test the peak is lowered and its neighbours raised."""
        smoothed = smooth_monitor(unit_mesh, spike, SmoothingParams(1.0, 1.0))
        centre = unit_mesh.node_index(4, 4)
        assert smoothed[centre] < 10.0
        assert smoothed[unit_mesh.node_index(5, 4)] > 1.0

    def test_preserves_weighted_mean(self, unit_mesh, spike):
        """Test the lumped-mass weighted mean is kept."""
        weights = lumped_mass(unit_mesh, Frame.COMPUTATIONAL)
        smoothed = smooth_monitor(unit_mesh, spike, SmoothingParams(1.0, 1.0))
        before = (weights * spike).sum() / weights.sum()
        after = (weights * smoothed).sum() / weights.sum()
        assert after == pytest.approx(before, rel=1e-2)

    def test_constant_is_fixed_point(self, unit_mesh):
        """Test a constant monitor is unchanged by smoothing."""
        smoothed = smooth_monitor(unit_mesh, np.full(unit_mesh.n_nodes, 2.5), SmoothingParams(3.0, 1.0))
        assert np.allclose(smoothed, 2.5)

    def test_wrong_length(self, unit_mesh):
        """Test monitors of the wrong length are rejected."""
        with pytest.raises(InvalidArgument):
            smooth_monitor(unit_mesh, np.ones(5), SmoothingParams())

    def test_negative_sigma(self):
        """Test negative smoothing parameters are rejected."""
        with pytest.raises(InvalidArgument):
            SmoothingParams(-1.0, 1.0)

    def test_diffusion_tensor(self):
        """Test the tensor scales as sigma (sigma + 1) / n^2."""
        assert SmoothingParams(3.0, 1.0).diffusion(10, 20) == pytest.approx((12.0 / 100.0, 2.0 / 400.0))


class TestHarmonicMap:
    """Test boundary equidistribution and the interior harmonic solve."""

    def test_equidistribute_constant(self):
        """Test a constant monitor maps positions linearly onto [0, 1]."""
        positions = np.array([0.0, 1.0, 3.0, 4.0])
        assert np.allclose(equidistribute(positions, np.ones(4)), [0.0, 0.25, 0.75, 1.0])

    def test_equidistribute_rejects_zero(self):
        """Test a zero monitor trace is rejected."""
        with pytest.raises(InvalidArgument):
            equidistribute(np.array([0.0, 1.0]), np.zeros(2))

    def test_uniform_monitor_identity(self, make_mesh):
        """Test a uniform monitor on a uniform mesh reproduces the computational grid."""
        mesh = make_mesh(5, 4, bounds=(0.0, 2.0, 0.0, 1.0))
        monitor = np.ones(mesh.n_nodes)
        xi = solve_harmonic_map(mesh, monitor, redistribute_boundary(mesh, monitor))
        assert np.allclose(xi, mesh.nodes_xi, atol=1e-12)

    def test_scale_equivariance(self, unit_mesh):
        """Test scaling the monitor leaves the map unchanged."""
        rng = np.random.default_rng(2)
        monitor = 1.0 + rng.random(unit_mesh.n_nodes)
        xi_a = solve_harmonic_map(unit_mesh, monitor, redistribute_boundary(unit_mesh, monitor))
        xi_b = solve_harmonic_map(unit_mesh, 7.0 * monitor, redistribute_boundary(unit_mesh, 7.0 * monitor))
        assert np.allclose(xi_a, xi_b, atol=1e-12)

    def test_boundary_equidistributed(self, unit_mesh):
        """Test corners stay pinned and side coordinates stay in order."""
        monitor = 1.0 + unit_mesh.nodes_x[:, 0] * 5.0
        xi_b = redistribute_boundary(unit_mesh, monitor)
        bottom = unit_mesh.side_nodes(Side.BOTTOM)
        assert xi_b[bottom[0], 0] == 0.0 and xi_b[bottom[-1], 0] == 1.0
        assert np.all(np.diff(xi_b[bottom, 0]) > 0.0)

    def test_rejects_nonpositive_monitor(self, unit_mesh):
        """Test a monitor with zeros is rejected."""
        monitor = np.ones(unit_mesh.n_nodes)
        monitor[10] = 0.0
        with pytest.raises(InvalidArgument):
            solve_harmonic_map(unit_mesh, monitor, unit_mesh.nodes_xi)


class TestCycle:
    """Test one redistribution cycle."""

    def _run(self, mesh, u, **spec):
        state = FieldState(u, np.zeros_like(u), 0.0)
        return mesh_move_cycle(mesh, state, MonitorSpec(**spec), SmoothingParams(1.0, 1.0),
                               MovingMeshParams())

    def test_constant_field_keeps_uniform_mesh(self, unit_mesh):
        """Test a flat field converges immediately without moving nodes."""
        before = unit_mesh.nodes_x.copy()
        mesh, state, report = self._run(unit_mesh, np.full(unit_mesh.n_nodes, 0.4))
        assert report.converged
        assert report.iterations == 0
        assert np.array_equal(mesh.nodes_x, before)
        assert np.all(state.u == 0.4)

    def test_nodes_cluster_at_layer(self, make_mesh):
        """Test nodes move toward a steep layer and the mesh stays valid."""
        mesh = make_mesh(10, 10)
        u = front(mesh.nodes_x[:, 0], mesh.nodes_x[:, 1])
        mesh, _, report = self._run(mesh, u, kind=MonitorKind.ARC_LENGTH, kappa=0.5)
        assert report.iterations >= 1
        assert report.min_area > 0.0
        validate_mesh(mesh, frames=[Frame.PHYSICAL])
        bottom = mesh.nodes_x[mesh.side_nodes(Side.BOTTOM), 0]
        widths = np.diff(bottom)
        centre = np.argmin(np.abs(0.5 * (bottom[1:] + bottom[:-1]) - 0.5))
        assert widths[centre] < 0.1
        assert widths[centre] < widths[0]

    def test_sampler_reevaluates_field(self, make_mesh):
        """Test a sampler gives exact field values at moved nodes."""
        mesh = make_mesh(10, 10)
        u = front(mesh.nodes_x[:, 0], mesh.nodes_x[:, 1])
        state = FieldState(u, np.zeros_like(u), 0.0)
        mesh, state, _ = mesh_move_cycle(mesh, state, MonitorSpec(), SmoothingParams(),
                                         MovingMeshParams(), sampler=front)
        assert np.allclose(state.u, front(mesh.nodes_x[:, 0], mesh.nodes_x[:, 1]))

    def test_dirichlet_values_restored(self, make_mesh):
        """Test Dirichlet nodes keep their values after transfer."""
        mesh = make_mesh(10, 10, dirichlet_sides=["bottom", "top"])
        u = front(mesh.nodes_x[:, 0], mesh.nodes_x[:, 1])
        state = FieldState(u, np.zeros_like(u), 0.0)
        mesh, new, _ = mesh_move_cycle(mesh, state, MonitorSpec(), SmoothingParams(), MovingMeshParams())
        assert np.array_equal(new.u[mesh.dirichlet_mask], u[mesh.dirichlet_mask])

    def test_displacement_tangential_on_boundary(self, unit_mesh):
        """Test boundary displacements have no normal component and corners stay fixed."""
        rng = np.random.default_rng(4)
        delta = 0.01 * rng.standard_normal((unit_mesh.n_nodes, 2))
        dx = physical_displacement(unit_mesh, unit_mesh.nodes_xi, delta)
        assert np.all(dx[unit_mesh.side_nodes(Side.LEFT), 0] == 0.0)
        assert np.all(dx[unit_mesh.side_nodes(Side.TOP), 1] == 0.0)
        corner = unit_mesh.node_index(0, 0)
        assert np.all(dx[corner] == 0.0)

    def test_guard_shrinks_step(self, make_mesh):
        """Test a tangling displacement is scaled down or refused."""
        mesh = make_mesh(2, 2)
        dx = np.zeros((mesh.n_nodes, 2))
        dx[mesh.node_index(1, 1)] = [0.8, 0.0]
        nodes, tau = guarded_move(mesh, dx, MovingMeshParams())
        assert nodes is not None
        assert tau < 1.0
        before = signed_areas(mesh)
        mesh.move_to(nodes)
        assert np.all(signed_areas(mesh) >= 0.1 * before)

    def test_guard_freezes(self, make_mesh):
        """Test no admissible step returns None."""
        mesh = make_mesh(2, 2)
        dx = np.zeros((mesh.n_nodes, 2))
        dx[mesh.node_index(1, 1)] = [1e6, 0.0]
        nodes, _ = guarded_move(mesh, dx, MovingMeshParams())
        assert nodes is None

    def test_transfer_exact_for_linear(self, unit_mesh):
        """Test interpolation onto new positions is exact for linear fields."""
        u = 1.0 + unit_mesh.nodes_x[:, 0] - 2.0 * unit_mesh.nodes_x[:, 1]
        rng = np.random.default_rng(9)
        targets = rng.random((20, 2))
        expected = 1.0 + targets[:, 0] - 2.0 * targets[:, 1]
        assert np.allclose(interpolate_field(unit_mesh, u, targets), expected)

    def test_params_validation(self):
        """Test out-of-range step controls are rejected."""
        with pytest.raises(InvalidArgument):
            MovingMeshParams(area_guard=1.5)
        with pytest.raises(InvalidArgument):
            MovingMeshParams(max_outer_iter=0)


class TestDensityRatios:
    """Test consecutive cell-area ratios along the boundary strips."""

    def test_uniform_mesh_all_ones(self, make_mesh):
        """Test a uniform mesh has unit ratios on both axes."""
        mesh = make_mesh(10, 6, bounds=(-0.5, 0.5, -0.5, 0.5))
        for axis in ("x", "z"):
            report = density_ratio_report(mesh, axis)
            assert report
            assert ratio_extremes(report) == pytest.approx((1.0, 1.0))

    def test_report_size_skips_end_cells(self, make_mesh):
        """Test ratios touching the first or last strip cell are left out."""
        mesh = make_mesh(10, 6)
        assert len(density_ratio_report(mesh, "x")) == 2 * 7
        assert len(density_ratio_report(mesh, "z")) == 2 * 3

    def test_bad_axis(self, unit_mesh):
        """Test axes other than x and z are rejected."""
        with pytest.raises(InvalidArgument):
            density_ratio_report(unit_mesh, "y")

    def test_ratio_bounds(self):
        """Test the admissible ratio range for given smoothing."""
        assert ratio_bounds(3.0) == pytest.approx((0.75, 4.0 / 3.0))
        assert ratio_bounds(1.0) == pytest.approx((0.5, 2.0))
        assert ratio_bounds(0.0) == (0.0, float("inf"))

    def test_empty_report_extremes(self):
        """Test an empty report is neutral."""
        assert ratio_extremes([]) == (1.0, 1.0)
