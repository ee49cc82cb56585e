"""CLI registration for the scenario runs."""

from .commands import cmd_converge, cmd_efficiency, cmd_finger, cmd_meshdemo, cmd_tw


def register():
    """Register scenario commands with main CLI.

    Returns:
        dict: Command registration info keyed by command name
    """
    return {
        'converge': {
            'func': cmd_converge,
            'help': 'Spatial convergence study on the linear equation',
            'parser': setup_converge_parser,
        },
        'tw': {
            'func': cmd_tw,
            'help': 'Traveling-wave run (cases 1-3) compared against the 1D oracle',
            'parser': setup_tw_parser,
        },
        'finger': {
            'func': cmd_finger,
            'help': 'Fingering instability of a perturbed front',
            'parser': setup_finger_parser,
        },
        'meshdemo': {
            'func': cmd_meshdemo,
            'help': 'Adaptive mesh and density ratios for a static test field',
            'parser': setup_meshdemo_parser,
        },
        'efficiency': {
            'func': cmd_efficiency,
            'help': 'Fixed h=1/16 against moving h=1/8 on traveling-wave case 1',
            'parser': setup_efficiency_parser,
        },
    }


def _add_common(parser, default_out):
    """Arguments shared by every scenario command."""
    parser.add_argument('--config', help='Flat key = value run configuration file')
    parser.add_argument('--set', action='append', default=[], metavar='KEY=VALUE',
                        help='Override a configuration key (repeatable)')
    parser.add_argument('--out', default=None, help=f'Output directory (default: {default_out})')
    parser.set_defaults(default_out=default_out)
    parser.add_argument('--h', type=float, help='Mesh size (largest admissible cell size)')
    parser.add_argument('--dt', type=float, help='Time step')
    parser.add_argument('--T', type=float, dest='T', help='End time')
    parser.add_argument('--kappa', type=float, help='Monitor adaptivity in [0, 1]')
    parser.add_argument('--monitor', choices=['arc-length', 'curvature'], help='Monitor type')
    parser.add_argument('--sigma-xi', type=float, help='Smoothing parameter along xi')
    parser.add_argument('--sigma-eta', type=float, help='Smoothing parameter along eta')
    parser.add_argument('--verbose', action='store_true', help='Log per-step diagnostics to stderr')


def _add_mesh_mode(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--moving', dest='moving', action='store_true', default=None,
                       help='Redistribute the mesh every step')
    group.add_argument('--fixed', dest='moving', action='store_false', help='Keep the initial mesh')
    parser.add_argument('--snapshot-every', type=int, help='Snapshot cadence in steps (0 disables)')


def setup_converge_parser(subparsers):
    parser = subparsers.add_parser('converge', help='Spatial convergence study on the linear equation')
    _add_common(parser, 'out/converge')
    parser.add_argument('--fine', action='store_true', default=None, help='Add h = 0.0125')
    parser.add_argument('--variant', action='append', choices=['fixed', 'arc-length', 'curvature'],
                        help='Restrict to these variants (repeatable; default: all)')
    return parser


def setup_tw_parser(subparsers):
    parser = subparsers.add_parser('tw', help='Traveling-wave run compared against the 1D oracle')
    _add_common(parser, 'out/tw')
    _add_mesh_mode(parser)
    parser.add_argument('--case', type=int, choices=[1, 2, 3], default=1, help='Initial condition (default: 1)')
    parser.add_argument('--dt-sweep', help='Comma-separated time steps to compare, e.g. 0.05,0.1,0.2')
    return parser


def setup_finger_parser(subparsers):
    parser = subparsers.add_parser('finger', help='Fingering instability of a perturbed front')
    _add_common(parser, 'out/finger')
    _add_mesh_mode(parser)
    return parser


def setup_meshdemo_parser(subparsers):
    parser = subparsers.add_parser('meshdemo', help='Adaptive mesh and density ratios for a static field')
    _add_common(parser, 'out/meshdemo')
    parser.add_argument('--max-cycles', type=int, help='Move cycles before giving up (default: 40)')
    return parser


def setup_efficiency_parser(subparsers):
    parser = subparsers.add_parser('efficiency', help='Fixed against moving mesh on traveling-wave case 1')
    _add_common(parser, 'out/efficiency')
    return parser


__all__ = ['register']
