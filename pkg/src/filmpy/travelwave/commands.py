"""Command implementations for the traveling-wave oracle."""

from __future__ import annotations

from pathlib import Path

from filmpy.assembly.models import PhysicsModel
from filmpy.shared.export import write_csv
from filmpy.shared.logs import configure_run_log
from filmpy.shared.messages import print_info, print_success
from filmpy.travelwave.bvp import first_integral_residual, solve_tw_profile
from filmpy.travelwave.models import PHASE_HEADER, PROFILE_HEADER, TWProblem
from filmpy.travelwave.phase import is_simple_curve, phase_plane
from filmpy.travelwave.speed import rankine_hugoniot_speed
from filmpy.views import key_value_view

TW_STATES = (0.3323, 0.1)
BUMP_STATE = 0.6
FINGER_STATES = (1.0, 0.1)

PROFILE_FILENAME = "profile.csv"
PHASE_FILENAME = "phase_plane.csv"


def speed_report():
    """Jump-condition speeds quoted for the traveling-wave and fingering runs."""
    film = PhysicsModel.thin_film()
    u_minus, u_plus = TW_STATES
    return [
        ("s (u-, u+)", rankine_hugoniot_speed(film, u_minus, u_plus)),
        ("s_left (u-, 0.6)", rankine_hugoniot_speed(film, u_minus, BUMP_STATE)),
        ("s_right (0.6, u+)", rankine_hugoniot_speed(film, BUMP_STATE, u_plus)),
        ("s_finger (1, 0.1)", rankine_hugoniot_speed(PhysicsModel.fingering(), *FINGER_STATES)),
    ]


def _model_from_args(args) -> PhysicsModel:
    if args.model == 'fingering':
        gamma = 1.0 if args.gamma is None else args.gamma
        return PhysicsModel.fingering(beta=args.beta, gamma=gamma)
    gamma = 0.001 if args.gamma is None else args.gamma
    return PhysicsModel.thin_film(beta=args.beta, gamma=gamma)


def write_profile(profile, out_dir: Path):
    """Write profile.csv and phase_plane.csv; returns both paths."""
    out_dir = Path(out_dir)
    profile_path = write_csv(PROFILE_HEADER, profile.rows(), out_dir / PROFILE_FILENAME)
    phase_path = write_csv(PHASE_HEADER, phase_plane(profile), out_dir / PHASE_FILENAME)
    return profile_path, phase_path


def cmd_oracle(args):
    """Solve the traveling-wave BVP (or just list the shock speeds)."""
    if args.speeds:
        key_value_view(speed_report(), title="Shock speeds").display()
        return

    out_dir = Path(args.out)
    configure_run_log(out_dir, getattr(args, 'verbose', False))
    model = _model_from_args(args)
    problem = TWProblem(model, args.u_minus, args.u_plus,
                        interval=tuple(args.interval), n_ode=args.n_ode)
    speed = rankine_hugoniot_speed(model, args.u_minus, args.u_plus)
    print_info(f"Jump-condition speed s = {speed:.4f}")
    if args.speed is not None:
        speed = args.speed

    profile = solve_tw_profile(problem, speed)
    profile_path, phase_path = write_profile(profile, out_dir)

    key_value_view([
        ("speed", speed),
        ("newton iterations", profile.iterations),
        ("residual", profile.residual),
        ("first-integral residual", first_integral_residual(problem, profile)),
        ("bordering constant", profile.bordering),
        ("max u", float(profile.u.max())),
        ("min u", float(profile.u.min())),
        ("simple phase curve", is_simple_curve(phase_plane(profile))),
    ], title="Traveling-wave profile").display()
    print_success(f"Profile written to {profile_path} and {phase_path}")
