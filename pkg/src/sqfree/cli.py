"""Command-line parsing for sqfree.

Length sequences are given largest last, in natural ascending order:
``--s 3,5`` means ``i_2 = 3`` and ``i_1 = 5``.
"""

import argparse
from collections.abc import Sequence
from typing import Optional

from sqfree import __version__, default_config

COMMANDS = ("orbits", "mina", "graph", "walk", "simulate", "verify")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from err
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from err
    if value < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {text}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common options")
    group.add_argument(
        "--s",
        type=str,
        default=None,
        metavar="LENGTHS",
        help="Square lengths, comma-separated and increasing (e.g. 3,5).",
    )
    group.add_argument(
        "--l",
        dest="letters",
        type=_positive_int,
        default=2,
        help="Alphabet size (default: %(default)s).",
    )
    group.add_argument(
        "--seed",
        type=_non_negative_int,
        default=0,
        help="Random seed (default: %(default)s).",
    )
    group.add_argument(
        "--format",
        dest="output_format",
        choices=("text", "json", "dot"),
        default="text",
        help="Output format; dot is only available for graph.",
    )
    group.add_argument(
        "--threads",
        type=_positive_int,
        default=1,
        help="Worker processes for the verification grid.",
    )
    group.add_argument(
        "--env",
        type=str,
        default=None,
        help="Environment name (requires configuration file .env.{name}).",
    )
    return common


def _add_vertex_cap(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--vertex-cap",
        type=_positive_int,
        default=None,
        help="Largest l**N a graph build may consider.",
    )


def _add_orientation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--orientation",
        choices=("prepend", "append"),
        default="prepend",
        help="Arc direction of G(s) (default: %(default)s).",
    )


def build_parser() -> argparse.ArgumentParser:
    """The ``sqfree`` parser with one subcommand per operation."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="sqfree",
        description="Square avoidance over finite sets of square lengths.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "orbits", parents=[common], help="Orbit partition and generic word."
    )

    mina = sub.add_parser(
        "mina", parents=[common], help="Predicted and exact minA."
    )
    mina.add_argument(
        "--k-max",
        type=_positive_int,
        default=None,
        help="Largest alphabet size searched (default: r + 2).",
    )

    graph = sub.add_parser(
        "graph", parents=[common], help="Avoidance graph statistics."
    )
    _add_vertex_cap(graph)
    _add_orientation(graph)
    graph.add_argument(
        "--dead-ends", action="store_true", help="List the dead-ends."
    )
    graph.add_argument(
        "--dead-starts", action="store_true", help="List the dead-starts."
    )
    graph.add_argument(
        "--core",
        action="store_true",
        help="List the core; DOT and JSON export the core only.",
    )

    walk = sub.add_parser(
        "walk", parents=[common], help="Seeded random walk on the core."
    )
    _add_vertex_cap(walk)
    _add_orientation(walk)
    walk.add_argument(
        "--steps",
        type=_non_negative_int,
        default=default_config.WALK_STEPS,
        help="Number of letters to emit (default: %(default)s).",
    )

    simulate = sub.add_parser(
        "simulate", parents=[common], help="Run the sequential method."
    )
    simulate.add_argument(
        "--steps",
        type=_positive_int,
        default=default_config.SIMULATE_STEPS,
        help="Largest number of append attempts (default: %(default)s).",
    )
    simulate.add_argument(
        "--trials",
        type=_positive_int,
        default=default_config.SIMULATE_TRIALS,
        help="Number of runs, seeded seed, seed+1, ... (default: %(default)s).",
    )

    verify = sub.add_parser(
        "verify", parents=[common], help="Run every audit suite."
    )
    verify.add_argument(
        "--grid",
        type=str,
        default=None,
        help="Dead-end audit bounds (default: r<=3,i1<=7,l<=3).",
    )
    verify.add_argument(
        "--word-length",
        type=_positive_int,
        default=default_config.ORACLE_WORD_LENGTH,
        help="Longest word in the word oracle (default: %(default)s).",
    )
    verify.add_argument(
        "--walk-steps",
        type=_positive_int,
        default=default_config.VERIFY_WALK_STEPS,
        help="Walk length on every core (default: %(default)s).",
    )
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse ``argv`` (the process arguments when omitted).

    Raises:
        SystemExit: With code 2 on usage errors, as argparse does.
    """
    return build_parser().parse_args(argv)
