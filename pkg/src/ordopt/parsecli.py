
from argparse import ArgumentParser, Namespace
from typing import Sequence

from .logger import logger, set_verbosity


def output_options() -> ArgumentParser:
    """Parent parser with the ``--json``/``--csv`` switch shared by every subcommand."""

    parent = ArgumentParser(add_help=False)
    fmt = parent.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="One JSON object per line (default).")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv",
                     help="CSV with a header row.")
    parent.set_defaults(fmt="json")
    return parent


def parse_cli(parser: ArgumentParser, args: Sequence[str]) -> Namespace:
    verbosity_group = parser.add_mutually_exclusive_group()
    verbosity_group.add_argument('--verbose', action='store_true',
                                 help='Report progress, e.g. each sweep point.')
    verbosity_group.add_argument('--no-verbose', action='store_true',
                                 help='Warnings and errors only (default).', default=True)
    verbosity_group.add_argument('--debug', action='store_true',
                                 help='Also report quadrature, simulation and angle-search details.')
    verbosity_group.add_argument('--quiet', action='store_true',
                                 help='Errors only.')

    ret = parser.parse_args(args)
    set_verbosity(quiet=ret.quiet, verbose=ret.verbose, debug=ret.debug)

    logger.debug("Start %s with %r.", ret.command,
                 {k: v for k, v in vars(ret).items() if v is not None})

    return ret
