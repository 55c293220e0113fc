from __future__ import annotations

import csv
import io
import sys
from pathlib import Path

from .constants import VERSION
from .errors import QmeError
from .models import ExperimentConfig, ResultTable
from .template_engine import HeaderRenderer, TemplateRenderError


def format_cell(value: object) -> str:
    """15 significant digits for reals; undefined values are left empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


class ResultWriter:
    """Writes a result table as CSV behind a ``#`` header block."""

    def __init__(self, config: ExperimentConfig) -> None:
        self._config = config
        self._renderer = HeaderRenderer()

    def render(self, table: ResultTable) -> str:
        try:
            header = self._renderer.render(
                {
                    "version": VERSION,
                    "experiment": self._config.kind,
                    "config": self._config.header_items(),
                    "columns": table.columns,
                }
            )
        except TemplateRenderError as exc:
            raise QmeError(f"Unable to render CSV header: {exc}") from exc

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.column_names)
        for row in table.rows:
            writer.writerow([format_cell(value) for value in row])
        return header + buffer.getvalue()

    def write(self, table: ResultTable) -> Path | None:
        text = self.render(table)
        destination = self._config.output
        if destination is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None
        try:
            destination.parent.mkdir(parents=True, exist_ok=True)
            with destination.open("w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as exc:
            raise QmeError(f"Unable to write {destination}: {exc}") from exc
        return destination
