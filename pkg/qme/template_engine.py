from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from jinja2 import StrictUndefined, TemplateError
from jinja2.sandbox import SandboxedEnvironment

HEADER_TEMPLATE = """\
# qme {{ version }}: {{ experiment }}
# units: energies and temperature share one unit (k_B = 1); entropies in nats
{% for key, value in config %}# {{ key }} = {{ value }}
{% endfor %}{% for name, unit in columns %}# column {{ name }}: {{ unit }}
{% endfor %}"""


class TemplateRenderError(RuntimeError):
    """Raised when rendering the CSV header block fails."""


@dataclass
class HeaderRenderer:
    template: str = HEADER_TEMPLATE

    def __post_init__(self) -> None:
        self._engine = SandboxedEnvironment(
            autoescape=False,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )

    def render(self, context: dict[str, Any]) -> str:
        try:
            compiled = self._engine.from_string(self.template)
            return compiled.render(context)
        except TemplateError as exc:
            raise TemplateRenderError(str(exc)) from exc
