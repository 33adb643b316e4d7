"""
Build a RunConfig from an optional JSON file plus command-line flags.

Flags override the file; the file overrides the per-command defaults.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from ..core.config import settings
from ..core.errors import ConfigError
from ..core.run_config import RunConfig
from ..hamiltonians.families import ModelFamily, get_family

logger = logging.getLogger(__name__)

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "edge-qfi": {"model": "ssh", "lambdas": [0.5], "sizes": [32]},
    "manybody-qfi": {"model": "ssh", "lambdas": [1.0], "sizes": [8], "method": "pbc-sum"},
    "exponent-scan": {"model": "ssh", "lambdas": [0.5], "sizes": [64, 128, 256, 512, 1024, 2048], "quantity": "edge"},
    "estimate": {"model": "ssh", "lambdas": [0.5], "sizes": [32]},
    "closed-forms": {"model": "ssh", "lambdas": [0.5], "sizes": [8]},
}

# coupling keys each model accepts
MODEL_PARAMS = {
    "ssh": ("j2",),
    "chern-wire": ("kx", "t1", "t2"),
    "chern-bloch": ("t1", "t2"),
    "band-inversion": ("alpha", "lambda_c"),
}


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"Cannot parse number list '{text}': {e}") from e


def parse_lambda_grid(text: str) -> List[float]:
    """'lo:hi:n' -> n evenly spaced values including both ends."""
    parts = text.split(":")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError) as e:
        raise ConfigError(f"Lambda grid must look like lo:hi:n, got '{text}'.") from e
    if len(parts) != 3 or n < 1:
        raise ConfigError(f"Lambda grid must look like lo:hi:n with n >= 1, got '{text}'.")
    return [float(x) for x in np.linspace(lo, hi, n)]


def parse_sizes(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"Sizes must be a comma-separated list of integers, got '{text}'.") from e


def parse_interval(text: str) -> List[float]:
    parts = text.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except (IndexError, ValueError) as e:
        raise ConfigError(f"Interval must look like lo:hi, got '{text}'.") from e
    if len(parts) != 2:
        raise ConfigError(f"Interval must look like lo:hi, got '{text}'.")
    return [lo, hi]


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"Config file not found: {p}")
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {p} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {p} must hold a JSON object.")
    return data


def build_run_config(command: str, file_values: Dict[str, Any], flag_values: Dict[str, Any]) -> RunConfig:
    merged: Dict[str, Any] = dict(COMMAND_DEFAULTS.get(command, {}))
    merged.update(file_values)
    params = dict(merged.get("params", {}))
    params.update(flag_values.pop("params", {}) or {})
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    merged["params"] = params
    merged["command"] = command
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


def family_from_config(cfg: RunConfig) -> ModelFamily:
    allowed = MODEL_PARAMS.get(cfg.model)
    if allowed is None:
        raise ConfigError(f"Unknown model '{cfg.model}'. Choose from {sorted(MODEL_PARAMS)}.")
    kwargs = {k: v for k, v in cfg.params.items() if k in allowed}
    return get_family(cfg.model, **kwargs)


def simulation_defaults(cfg: RunConfig) -> Dict[str, int]:
    return {
        "M": cfg.samples if cfg.samples is not None else settings.DEFAULT_SAMPLES,
        "R": cfg.reps if cfg.reps is not None else settings.DEFAULT_REPS,
        "seed": cfg.seed if cfg.seed is not None else settings.DEFAULT_SEED,
    }
