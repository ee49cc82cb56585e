"""CLI registration for the traveling-wave oracle."""

from .commands import cmd_oracle


def register():
    """Register oracle commands with main CLI.

    Returns:
        dict: Command registration info keyed by command name
    """
    return {
        'oracle': {
            'func': cmd_oracle,
            'help': 'Solve the 1D traveling-wave profile and report shock speeds',
            'parser': setup_parser,
        }
    }


def setup_parser(subparsers):
    """Setup argument parser for the oracle command."""
    parser = subparsers.add_parser(
        'oracle',
        help='Solve the 1D traveling-wave profile and report shock speeds'
    )
    parser.add_argument('--u-minus', type=float, default=0.3323, help='Left state (default: 0.3323)')
    parser.add_argument('--u-plus', type=float, default=0.1, help='Right state (default: 0.1)')
    parser.add_argument('--model', choices=['thin-film', 'fingering'], default='thin-film',
                        help='Flux/mobility pair (default: thin-film, F = u^2 - u^3, K = u^3)')
    parser.add_argument('--gamma', type=float, default=None,
                        help='Surface tension coefficient (default: 0.001 thin-film, 1 fingering)')
    parser.add_argument('--beta', type=float, default=0.0, help='Normal gravity coefficient (default: 0)')
    parser.add_argument('--interval', type=float, nargs=2, default=(-2.5, 2.5), metavar=('A', 'B'),
                        help='Truncated zeta interval (default: -2.5 2.5)')
    parser.add_argument('--n-ode', type=int, default=2000, help='Grid cells (default: 2000)')
    parser.add_argument('--speed', type=float, default=None,
                        help='Wave speed (default: jump-condition speed of the two states)')
    parser.add_argument('--out', default='out/oracle', help='Output directory (default: out/oracle)')
    parser.add_argument('--speeds', action='store_true',
                        help='Only print the shock speeds of the bump cases and the fingering run')
    parser.add_argument('--verbose', action='store_true', help='Log solver progress to stderr')
    return parser


__all__ = ['register']
