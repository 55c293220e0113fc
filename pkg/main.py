from __future__ import annotations

import asyncio
import sys

from qme import CliOptions, ConfigError, InvariantViolationError, QmeError, run
from qme.cli import parse_args
from qme.constants import EXIT_CONFIG_ERROR, EXIT_INVARIANT_FAILURE


def main() -> None:
    options = parse_args()
    try:
        asyncio.run(run(options))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG_ERROR) from exc
    except InvariantViolationError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVARIANT_FAILURE) from exc
    except QmeError as exc:
        raise SystemExit(str(exc)) from exc


__all__ = [
    "CliOptions",
    "main",
    "run",
]


if __name__ == "__main__":
    main()
