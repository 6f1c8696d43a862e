"""Config loading: one flat YAML mapping covering model and sweep settings.

Any subset of keys may appear; everything omitted falls back to the built-in
defaults.  Unknown keys and wrongly typed values are hard errors that name
the offending key, because a silently ignored typo in a parameter file is
the most expensive kind of bug a simulation study can have.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

import yaml

from .model import ModelParams
from .sweep import SweepSpec, default_b_d_values, default_phi_values

__all__ = ["ConfigError", "load_config", "MODEL_KEYS", "SWEEP_KEYS"]


class ConfigError(ValueError):
    """Raised for unreadable, unparsable, or invalid configuration input."""


MODEL_KEYS: tuple[str, ...] = tuple(f.name for f in dataclasses.fields(ModelParams))

SWEEP_KEYS: tuple[str, ...] = ("b_d_values", "phi_values", "replicates", "base_seed")

_INT_MODEL_KEYS = {"population_size", "horizon", "burn_in", "essential_capacity"}
_INT_SWEEP_KEYS = {"replicates", "base_seed"}
_LIST_KEYS = {"b_d_values", "phi_values"}


def _as_float(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number (got {value!r})")
    return float(value)


def _as_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer (got {value!r})")
    return int(value)


def _as_float_list(key: str, value) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{key} must be a list of numbers (got {value!r})")
    return tuple(_as_float(f"{key}[{i}]", v) for i, v in enumerate(value))


def _coerce(key: str, value):
    if key in _LIST_KEYS:
        return _as_float_list(key, value)
    if key in _INT_MODEL_KEYS or key in _INT_SWEEP_KEYS:
        if key == "essential_capacity" and value is None:
            return None
        return _as_int(key, value)
    return _as_float(key, value)


def _read_mapping(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err.strerror or err}") from err
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ConfigError(f"config file {path} is not valid YAML: {err}") from err
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(
            f"config file {path} must hold a key-value mapping, not {type(data).__name__}"
        )
    return data


def load_config(path: str | Path | None = None) -> tuple[ModelParams, SweepSpec]:
    """Build (model parameters, sweep spec) from a YAML file, or pure defaults.

    The file is one flat mapping; keys are the ModelParams field names plus
    b_d_values, phi_values, replicates, and base_seed.  An empty file means
    all defaults.
    """
    data = _read_mapping(Path(path)) if path is not None else {}

    unknown = sorted(k for k in data if k not in MODEL_KEYS and k not in SWEEP_KEYS)
    if unknown:
        raise ConfigError("unknown config keys: " + ", ".join(repr(k) for k in unknown))

    model_kwargs = {}
    sweep_kwargs = {}
    for key, value in data.items():
        coerced = _coerce(key, value)
        if key in MODEL_KEYS:
            model_kwargs[key] = coerced
        else:
            sweep_kwargs[key] = coerced

    try:
        params = ModelParams(**model_kwargs)
    except ValueError as err:
        raise ConfigError(str(err)) from err

    if "b_d_values" not in sweep_kwargs:
        sweep_kwargs["b_d_values"] = default_b_d_values(params)
    if "phi_values" not in sweep_kwargs:
        sweep_kwargs["phi_values"] = default_phi_values()
    try:
        spec = SweepSpec(base_params=params, **sweep_kwargs)
    except ValueError as err:
        raise ConfigError(str(err)) from err
    return params, spec
