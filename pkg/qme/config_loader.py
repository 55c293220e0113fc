from __future__ import annotations

import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml

from .constants import EXPERIMENT_KINDS
from .errors import ConfigError
from .models import ExperimentConfig, Grid

KEY_ALIASES = {
    "T": "temperature",
    "eps": "epsilon",
    "N_list": "n_list",
    "N-list": "n_list",
    "q-grid": "q_grid",
    "theta-grid": "theta_grid",
    "delta-e-points": "delta_e_points",
    "out": "output",
}
KNOWN_KEYS = {
    "temperature",
    "epsilon",
    "n_list",
    "q_grid",
    "theta_grid",
    "q",
    "theta",
    "delta_e_points",
    "tolerance",
    "output",
}


def load_config(
    kind: str, path: Path | None, overrides: Mapping[str, str]
) -> ExperimentConfig:
    """Merge defaults < config file < CLI overrides into a validated config."""
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError(
            f"Unknown experiment '{kind}'. Supported: {', '.join(EXPERIMENT_KINDS)}"
        )
    raw: dict[str, Any] = {}
    if path is not None:
        raw.update(_load_file(path))
    raw.update(_canonical_keys(overrides, "command line"))
    return _build_config(kind, raw)


def _load_file(path: Path) -> dict[str, Any]:
    try:
        payload = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"Failed to read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"Invalid YAML in {path}: {exc}") from exc

    if payload is None:
        return {}
    if not isinstance(payload, dict):
        raise ConfigError(
            "Config file root must be a flat YAML mapping of key: value lines "
            "(key = value is not accepted)"
        )
    for key, value in payload.items():
        if isinstance(value, dict):
            raise ConfigError(f"Config key '{key}' must not be nested")
    return _canonical_keys(payload, str(path))


def _canonical_keys(raw: Mapping[Any, Any], source: str) -> dict[str, Any]:
    canonical: dict[str, Any] = {}
    for key, value in raw.items():
        if not isinstance(key, str):
            raise ConfigError(f"Config keys must be strings (in {source})")
        name = KEY_ALIASES.get(key, key)
        if name not in KNOWN_KEYS:
            raise ConfigError(f"Unknown config key '{key}' (in {source})")
        canonical[name] = value
    return canonical


def _build_config(kind: str, raw: dict[str, Any]) -> ExperimentConfig:
    defaults = ExperimentConfig(kind=kind)
    temperature = _parse_float(raw, "temperature", defaults.temperature)
    if temperature < 0:
        raise ConfigError("'temperature' must be >= 0")
    epsilon = _parse_float(raw, "epsilon", defaults.epsilon)
    if epsilon <= 0:
        raise ConfigError("'epsilon' must be > 0")
    q = _parse_float(raw, "q", defaults.q)
    if not 0.0 < q < 1.0:
        raise ConfigError("'q' must lie strictly between 0 and 1")
    theta = _parse_float(raw, "theta", defaults.theta)
    _check_angle("theta", theta)
    tolerance = _parse_float(raw, "tolerance", defaults.tolerance)
    if tolerance <= 0:
        raise ConfigError("'tolerance' must be > 0")

    q_grid = _parse_grid(raw, "q_grid", defaults.q_grid)
    if min(q_grid.lo, q_grid.hi) <= 0.0 or max(q_grid.lo, q_grid.hi) >= 1.0:
        raise ConfigError("'q_grid' must stay strictly between 0 and 1")
    theta_grid = _parse_grid(raw, "theta_grid", defaults.theta_grid)
    _check_angle("theta_grid", theta_grid.lo)
    _check_angle("theta_grid", theta_grid.hi)

    delta_e_points = _parse_int(raw, "delta_e_points", defaults.delta_e_points)
    if delta_e_points < 2:
        raise ConfigError("'delta_e_points' must be at least 2")

    output = raw.get("output")
    if output is not None and (not isinstance(output, str) or not output):
        raise ConfigError("'output' must be a non-empty path string")

    return ExperimentConfig(
        kind=kind,
        temperature=temperature,
        epsilon=epsilon,
        n_list=_parse_n_list(raw.get("n_list")),
        q_grid=q_grid,
        theta_grid=theta_grid,
        q=q,
        theta=theta,
        delta_e_points=delta_e_points,
        tolerance=tolerance,
        output=Path(output) if output is not None else None,
    )


def _parse_float(raw: dict[str, Any], key: str, default: float) -> float:
    value = raw.get(key)
    if value is None:
        return default
    if isinstance(value, bool):
        raise ConfigError(f"'{key}' must be a number")
    try:
        number = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{key}' must be a number, got {value!r}") from exc
    if not math.isfinite(number):
        raise ConfigError(f"'{key}' must be finite")
    return number


def _parse_int(raw: dict[str, Any], key: str, default: int) -> int:
    value = raw.get(key)
    if value is None:
        return default
    if isinstance(value, bool):
        raise ConfigError(f"'{key}' must be an integer")
    try:
        return int(str(value).strip())
    except ValueError as exc:
        raise ConfigError(f"'{key}' must be an integer, got {value!r}") from exc


def _parse_n_list(value: Any) -> tuple[int, ...] | None:
    if value is None:
        return None
    items = value.split(",") if isinstance(value, str) else value
    if isinstance(items, int) and not isinstance(items, bool):
        items = [items]
    if not isinstance(items, list) or not items:
        raise ConfigError("'n_list' must be a non-empty list like 1,2,6")
    n_list: list[int] = []
    for item in items:
        try:
            n = int(str(item).strip())
        except ValueError as exc:
            raise ConfigError(f"'n_list' entry {item!r} is not an integer") from exc
        if n < 1:
            raise ConfigError(f"'n_list' entries must be >= 1, got {n}")
        n_list.append(n)
    return tuple(n_list)


def _parse_grid(raw: dict[str, Any], key: str, default: Grid) -> Grid:
    value = raw.get(key)
    if value is None:
        return default
    parts = value.split(":") if isinstance(value, str) else value
    if not isinstance(parts, list | tuple) or len(parts) != 3:
        raise ConfigError(f"'{key}' must have the form lo:hi:n, got {value!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        points = int(str(parts[2]).strip())
    except ValueError as exc:
        raise ConfigError(f"'{key}' must have the form lo:hi:n, got {value!r}") from exc
    if points < 1:
        raise ConfigError(f"'{key}' must contain at least one point")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigError(f"'{key}' bounds must be finite")
    return Grid(lo, hi, points)


def _check_angle(key: str, angle: float) -> None:
    if not 0.0 <= angle <= math.pi / 2 + 1e-12:
        raise ConfigError(f"'{key}' angles must lie in [0, pi/2], got {angle!r}")
