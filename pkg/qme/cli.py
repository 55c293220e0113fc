from __future__ import annotations

import argparse
import logging
from collections.abc import Sequence
from pathlib import Path

from .constants import DEFAULT_WORKERS, EXPERIMENT_KINDS
from .models import CliOptions

# flag dest -> config key
OVERRIDE_FLAGS = {
    "temperature": "temperature",
    "epsilon": "epsilon",
    "n_list": "n_list",
    "q_grid": "q_grid",
    "theta_grid": "theta_grid",
    "q": "q",
    "theta": "theta",
    "delta_e_points": "delta_e_points",
    "tolerance": "tolerance",
    "out": "output",
}


def parse_args(argv: Sequence[str] | None = None) -> CliOptions:
    parser = argparse.ArgumentParser(
        prog="qme",
        description="Simulate quantum measurement engines and write experiment CSVs",
    )
    parser.add_argument("command", choices=EXPERIMENT_KINDS, help="Experiment to run")
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help=(
            "Flat YAML config file of key: value lines (key = value is not "
            "accepted); command-line flags win"
        ),
    )
    parser.add_argument("--T", dest="temperature", help="Bath temperature (k_B = 1)")
    parser.add_argument("--eps", dest="epsilon", help="Qubit gap ε")
    parser.add_argument("--N-list", dest="n_list", help="Subsystem counts, e.g. 1,2,6")
    parser.add_argument("--q-grid", dest="q_grid", help="q grid lo:hi:n")
    parser.add_argument("--theta-grid", dest="theta_grid", help="Basis angle grid lo:hi:n")
    parser.add_argument("--q", dest="q", help="Single q for scaling runs")
    parser.add_argument("--theta", dest="theta", help="Single basis angle for scaling runs")
    parser.add_argument(
        "--delta-e-points", dest="delta_e_points", help="ΔE_1 samples for fig2"
    )
    parser.add_argument("--tolerance", help="Residual tolerance for decomposition")
    parser.add_argument("--out", help="Output CSV path (default: stdout)")
    parser.add_argument(
        "--workers",
        type=int,
        default=DEFAULT_WORKERS,
        help="Grid points evaluated concurrently",
    )
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging verbosity",
    )
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be 1 or greater")

    overrides = {
        key: getattr(args, dest)
        for dest, key in OVERRIDE_FLAGS.items()
        if getattr(args, dest) is not None
    }
    return CliOptions(
        kind=args.command,
        config_file=args.config,
        overrides=overrides,
        log_level=args.log_level,
        workers=args.workers,
    )


def configure_logging(level: str) -> logging.Logger:
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(message)s",
    )
    return logging.getLogger("qme")
