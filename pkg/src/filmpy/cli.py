"""
CLI entry point with feature registration.

Each feature package contributes commands through ``cli.register()``;
library errors are mapped to exit codes here and nowhere else.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from filmpy import __version__
from filmpy.scenarios import cli as scenarios_cli
from filmpy.shared.errors import EXIT_FAILURE, FilmError, exit_code_for
from filmpy.shared.messages import print_error
from filmpy.shared.output import OutputMode, set_output_mode
from filmpy.travelwave import cli as travelwave_cli

VERSION_FLAGS = {"-v", "--version"}

GLOBAL_FLAG_MAP = {
    '--data': 'data',
    '--agent': 'agent',
}

FEATURES = [scenarios_cli, travelwave_cli]


def _print_version():
    """Display logo + version info."""
    logo_path = Path(__file__).parent / "logo.txt"
    try:
        logo = logo_path.read_text().rstrip()
        if logo:
            print(logo)
    except OSError:
        pass

    print(f"Version: {__version__}")


def build_cli():
    """Build CLI with all registered features.

    Returns:
        ArgumentParser: Configured argument parser
    """
    parser = argparse.ArgumentParser(
        prog='filmpy',
        description='Moving-mesh finite element runs for thin film flow'
    )
    parser.add_argument('--data', action='store_true', help='Tab-separated table output')
    parser.add_argument('--agent', action='store_true', help='JSON table output')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    for feature in FEATURES:
        for cmd_name, cmd_info in feature.register().items():
            cmd_parser = cmd_info['parser'](subparsers)
            cmd_parser.set_defaults(func=cmd_info['func'])

    return parser


def _extract_global_flags(argv):
    """Allow global flags to be specified anywhere in the command."""
    flags = {name: False for name in GLOBAL_FLAG_MAP.values()}
    remaining = []

    for token in argv:
        flag_name = GLOBAL_FLAG_MAP.get(token)
        if flag_name:
            flags[flag_name] = True
            continue
        remaining.append(token)

    return flags, remaining


def _configure_output_mode(args) -> OutputMode:
    if getattr(args, 'agent', False):
        mode = OutputMode.AGENT
    elif getattr(args, 'data', False):
        mode = OutputMode.DATA
    else:
        mode = OutputMode.PRETTY
    set_output_mode(mode)
    return mode


def main(argv=None):
    """Parse arguments, run the command and exit with its status code."""
    if argv is None:
        argv = sys.argv[1:]

    if any(flag in argv for flag in VERSION_FLAGS):
        _print_version()
        return

    flag_values, remaining = _extract_global_flags(list(argv))
    parser = build_cli()
    args = parser.parse_args(remaining)

    for attr, value in flag_values.items():
        setattr(args, attr, getattr(args, attr, False) or value)
    _configure_output_mode(args)

    if not hasattr(args, 'func'):
        parser.print_help()
        sys.exit(EXIT_FAILURE)

    try:
        args.func(args)
    except (FilmError, OSError) as exc:
        code = exit_code_for(exc)
        logging.getLogger("filmpy").debug("Command failed", exc_info=True)
        print_error(str(exc))
        sys.exit(EXIT_FAILURE if code is None else code)


if __name__ == '__main__':
    main()
