from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import TypeVar

Point = TypeVar("Point")
Result = TypeVar("Result")


@dataclass(frozen=True)
class SweepRunnerConfig:
    workers: int
    logger: logging.Logger


class SweepRunner:
    """Evaluates independent grid points concurrently, returning them in grid order."""

    def __init__(self, config: SweepRunnerConfig) -> None:
        self._workers = config.workers
        self._logger = config.logger

    async def map(
        self,
        evaluate: Callable[[Point], Result],
        points: Sequence[Point],
        context: str,
    ) -> list[Result]:
        self._logger.info("Evaluating %d points for %s", len(points), context)
        results: list[Result] = []
        for start in range(0, len(points), self._workers):
            batch = points[start : start + self._workers]
            results.extend(
                await asyncio.gather(
                    *(asyncio.to_thread(evaluate, point) for point in batch)
                )
            )
            self._logger.debug(
                "%s: %d/%d points done", context, len(results), len(points)
            )
        return results
