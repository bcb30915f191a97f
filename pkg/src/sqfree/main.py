"""Main entry point for the sqfree command-line tool.

Main Functions:
    - main: Parses the arguments, applies the environment override and runs
      the selected command, mapping library errors to exit codes.
"""

import os
import sys
from collections.abc import Sequence
from typing import Optional

from sqfree.cli import parse_args
from sqfree.config import set_env_vars


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run sqfree and return the process exit code.

    Exit codes: 0 success, 2 usage or contract violation, 3 budget
    exceeded, 4 verification failure.
    """
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.env:
        os.environ["ENV"] = args.env
        set_env_vars(override=True)

    # Note: Lazy import so the environment above is in place first
    from rich.console import Console

    from sqfree.commands import run
    from sqfree.reports import RunConfig, dump_json, error_envelope
    from sqfree.utils.error_classes import SqfreeError
    from sqfree.utils.ui import SqfreeUI

    config: Optional[RunConfig] = None
    try:
        config = RunConfig.from_args(args)
        return run(config)
    except SqfreeError as err:
        if args.output_format == "json":
            print(dump_json(error_envelope(err, config)))
        else:
            err.display(SqfreeUI(console=Console(stderr=True)))
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
