"""Command implementations for the scenario runs."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

from filmpy.moving.quality import ratio_bounds
from filmpy.scenarios.convergence import run_convergence
from filmpy.scenarios.finger import run_finger
from filmpy.scenarios.meshdemo import run_meshdemo
from filmpy.scenarios.models import Scenario, ScenarioConfig
from filmpy.scenarios.waves import run_dt_sweep, run_efficiency, run_tw
from filmpy.shared.config import load_config, parse_overrides
from filmpy.shared.errors import ConfigError
from filmpy.shared.logs import configure_run_log
from filmpy.shared.messages import print_info, print_success, print_warning
from filmpy.views import ColumnConfig, TableView, key_value_view

# argparse dest -> config key
_FLAG_KEYS = {
    'h': 'h',
    'dt': 'dt',
    'T': 't_end',
    'kappa': 'kappa',
    'monitor': 'monitor',
    'sigma_xi': 'sigma_xi',
    'sigma_eta': 'sigma_eta',
    'moving': 'moving',
    'snapshot_every': 'snapshot_every',
    'fine': 'fine',
    'max_cycles': 'max_cycles',
}


def resolve_config(scenario, args) -> ScenarioConfig:
    """Scenario defaults < config file < ``--set`` overrides < dedicated flags."""
    file_layer: Dict[str, Any] = {}
    if getattr(args, 'config', None):
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")
        file_layer = load_config(path)
    overrides = parse_overrides(getattr(args, 'set', None))
    flags = {key: getattr(args, dest, None) for dest, key in _FLAG_KEYS.items()}
    flags['out_dir'] = getattr(args, 'out', None)
    base = {'out_dir': getattr(args, 'default_out', None)}
    return ScenarioConfig.from_mapping(scenario, base, file_layer, overrides, flags)


def _start(cfg: ScenarioConfig, args):
    log_path = configure_run_log(cfg.out_dir, getattr(args, 'verbose', False))
    nx, nz = cfg.cell_counts()
    print_info(f"{cfg.scenario.value}: {nx}x{nz} cells, dt={cfg.dt:g}, T={cfg.t_end:g}, "
               f"{'moving' if cfg.moving else 'fixed'} mesh (log: {log_path})")


def cmd_converge(args):
    """Run the convergence table."""
    cfg = resolve_config(Scenario.CONVERGE, args)
    _start(cfg, args)
    rows = run_convergence(cfg, args.variant)
    TableView(rows, [
        ColumnConfig("variant", "variant", align='left'),
        ColumnConfig("h", "h"),
        ColumnConfig("L2 error", "l2_error"),
        ColumnConfig("order", "order"),
    ], title="Convergence (L2 error at T)").display()
    print_success(f"Table written to {cfg.out_dir / 'convergence.csv'}")


def _parse_dts(text: str):
    try:
        values = [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"--dt-sweep expects comma-separated numbers (got {text!r})") from None
    if len(values) < 2:
        raise ConfigError("--dt-sweep needs at least two time steps")
    return values


def cmd_tw(args):
    """Run a traveling-wave case (or a time-step sweep of it)."""
    cfg = resolve_config(Scenario.for_case(args.case), args)
    _start(cfg, args)
    if args.dt_sweep:
        rows = run_dt_sweep(cfg, _parse_dts(args.dt_sweep))
        TableView([dict(zip(("dt_a", "dt_b", "diff"), row)) for row in rows], [
            ColumnConfig("dt a", "dt_a"),
            ColumnConfig("dt b", "dt_b"),
            ColumnConfig("Linf difference", "diff"),
        ], title=f"Time-step sweep, case {args.case}").display()
        print_success(f"Sweep written to {cfg.out_dir / 'dt_sweep.csv'}")
        return

    result = run_tw(cfg)
    key_value_view([
        ("frame speed", cfg.wave_speed()),
        ("front position", result.front),
        ("plateau", result.plateau),
        ("oracle distance", result.distance),
        ("oracle shift", result.shift),
        ("front drift (t in [50, 100])", result.front_drift()),
        ("nodes", result.nodes),
    ], title=f"Traveling wave, case {args.case}").display()
    print_success(f"Results written to {cfg.out_dir}")


def cmd_finger(args):
    """Run the fingering simulation."""
    cfg = resolve_config(Scenario.FINGER, args)
    _start(cfg, args)
    result = run_finger(cfg)
    TableView(result.samples, [
        ColumnConfig("t", "t"),
        ColumnConfig("tip", "tip"),
        ColumnConfig("root", "root"),
        ColumnConfig("gap", lambda s: s.gap),
        ColumnConfig("undershoot", "undershoot"),
    ], title=f"Finger diagnostics ({'moving' if cfg.moving else 'fixed'} mesh)").display()
    print_success(f"Results written to {cfg.out_dir}")


def cmd_meshdemo(args):
    """Adapt the demo mesh and report density ratios."""
    cfg = resolve_config(Scenario.MESHDEMO, args)
    _start(cfg, args)
    result = run_meshdemo(cfg)
    rows = []
    for axis, sigma in (("x", cfg.sigma_xi), ("z", cfg.sigma_eta)):
        low, high = result.extremes(axis)
        bound_low, bound_high = ratio_bounds(sigma)
        rows.append({"axis": axis, "min": low, "max": high, "lower": bound_low, "upper": bound_high})
    TableView(rows, [
        ColumnConfig("axis", "axis", align='left'),
        ColumnConfig("min ratio", "min"),
        ColumnConfig("max ratio", "max"),
        ColumnConfig("lower bound", "lower"),
        ColumnConfig("upper bound", "upper"),
    ], title=f"Density ratios (kappa={cfg.kappa:g}, cycles={len(result.cycles)})").display()
    if not result.converged:
        print_warning(f"Mesh not converged after {len(result.cycles)} cycles")
    print_success(f"Mesh and ratios written to {cfg.out_dir}")


def cmd_efficiency(args):
    """Compare fixed and moving meshes on case 1."""
    cfg = resolve_config(Scenario.TW1, args)
    _start(cfg, args)
    rows = run_efficiency(cfg)
    TableView([dict(zip(("variant", "h", "nodes", "distance", "seconds"), row)) for row in rows], [
        ColumnConfig("variant", "variant", align='left'),
        ColumnConfig("h", "h"),
        ColumnConfig("nodes", "nodes"),
        ColumnConfig("Linf distance", "distance"),
        ColumnConfig("seconds", "seconds"),
    ], title="Efficiency (T = 20)").display()
    print_success(f"Comparison written to {cfg.out_dir / 'efficiency.csv'}")
