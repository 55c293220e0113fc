from __future__ import annotations

from .cli import configure_logging
from .config_loader import load_config
from .errors import InvariantViolationError
from .experiments import EXPERIMENT_RUNNER_FOR_KIND, ExperimentDeps
from .models import CliOptions, ExperimentResult
from .output import ResultWriter
from .sweep import SweepRunner, SweepRunnerConfig


async def run(options: CliOptions) -> ExperimentResult:
    logger = configure_logging(options.log_level)
    config = load_config(options.kind, options.config_file, options.overrides)

    sweep = SweepRunner(SweepRunnerConfig(workers=options.workers, logger=logger))
    runner = EXPERIMENT_RUNNER_FOR_KIND[config.kind](
        ExperimentDeps(sweep=sweep, logger=logger), config
    )
    result = await runner.run()

    destination = ResultWriter(config).write(result.table)
    if destination is not None:
        logger.info("Wrote %d rows to %s", len(result.table.rows), destination)
    if result.failures:
        raise InvariantViolationError(
            f"{result.failures} grid point(s) exceed residual tolerance "
            f"{config.tolerance:g}"
        )
    return result
