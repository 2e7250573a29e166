"""
Strict JSON experiment configuration.

A config file is one JSON object holding SimConfig fields, plus optional
"sweep" and "sr_compare" blocks and an "output_dir". Unknown keys are fatal
anywhere in the document, so a typo in an experiment definition fails
loudly instead of silently running defaults.
"""

import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

# Add project root to path for config import
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import DEFAULT_C_GRID, DEFAULT_P_GRID, DEFAULT_REPLICATES

from .core import ConfigError, Neighborhood, SimConfig

SIM_FIELDS = {f.name for f in fields(SimConfig)}
SWEEP_KEYS = {"c_grid", "p_grid", "replicates"}
SR_KEYS = {"replicates", "seeds"}
BLOCK_KEYS = {"sweep", "sr_compare", "output_dir"}

__all__ = ["ConfigError", "ExperimentConfig", "SweepSettings", "SRSettings", "load_config", "parse_config"]


@dataclass(frozen=True)
class SweepSettings:
    c_grid: List[float]
    p_grid: List[float]
    replicates: int = DEFAULT_REPLICATES


@dataclass(frozen=True)
class SRSettings:
    replicates: int = DEFAULT_REPLICATES
    seeds: Optional[List[int]] = None  # explicit paired seeds; default derives them from the base seed


@dataclass(frozen=True)
class ExperimentConfig:
    sim: SimConfig
    sweep: Optional[SweepSettings] = None
    sr_compare: Optional[SRSettings] = None
    output_dir: Optional[str] = None


def _parse_neighborhood(value: Any) -> Neighborhood:
    if isinstance(value, str):
        key = value.strip().lower().replace("-", "_")
        aliases = {"vonneumann": "von_neumann", "von_neumann": "von_neumann", "moore": "moore"}
        if key in aliases:
            return Neighborhood(aliases[key])
    raise ConfigError("neighborhood", f"must be 'von_neumann' or 'moore', got {value!r}")


def _parse_grid(name: str, value: Any) -> List[float]:
    if not isinstance(value, list) or not value:
        raise ConfigError(name, f"must be a non-empty list of numbers, got {value!r}")
    grid = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)) or not 0 <= item <= 1:
            raise ConfigError(name, f"entries must be numbers in [0, 1], got {item!r}")
        grid.append(float(item))
    return grid


def _parse_replicates(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(name, f"must be a positive integer, got {value!r}")
    return value


def _reject_unknown(block: str, data: Dict[str, Any], allowed: set) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        prefix = f"{block}." if block else ""
        raise ConfigError(f"{prefix}{unknown[0]}", f"unknown key (allowed: {sorted(allowed)})")


def _parse_sweep(data: Any) -> SweepSettings:
    if not isinstance(data, dict):
        raise ConfigError("sweep", "must be an object")
    _reject_unknown("sweep", data, SWEEP_KEYS)
    return SweepSettings(
        c_grid=_parse_grid("sweep.c_grid", data.get("c_grid", DEFAULT_C_GRID)),
        p_grid=_parse_grid("sweep.p_grid", data.get("p_grid", DEFAULT_P_GRID)),
        replicates=_parse_replicates("sweep.replicates", data.get("replicates", DEFAULT_REPLICATES)),
    )


def _parse_sr(data: Any) -> SRSettings:
    if not isinstance(data, dict):
        raise ConfigError("sr_compare", "must be an object")
    _reject_unknown("sr_compare", data, SR_KEYS)
    seeds = data.get("seeds")
    if seeds is not None:
        if not isinstance(seeds, list) or not seeds or any(isinstance(s, bool) or not isinstance(s, int) for s in seeds):
            raise ConfigError("sr_compare.seeds", f"must be a non-empty list of integers, got {seeds!r}")
    replicates = len(seeds) if seeds else data.get("replicates", DEFAULT_REPLICATES)
    return SRSettings(replicates=_parse_replicates("sr_compare.replicates", replicates), seeds=seeds)


def parse_config(data: Any) -> ExperimentConfig:
    """
    Build and validate an ExperimentConfig from a decoded JSON document.

    Raises:
        ConfigError: naming the offending field
    """
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a JSON object")
    _reject_unknown("", data, SIM_FIELDS | BLOCK_KEYS)

    sim_values = {key: value for key, value in data.items() if key in SIM_FIELDS}
    if "neighborhood" in sim_values:
        sim_values["neighborhood"] = _parse_neighborhood(sim_values["neighborhood"])
    sim = SimConfig(**sim_values).validate()

    output_dir = data.get("output_dir")
    if output_dir is not None and not isinstance(output_dir, str):
        raise ConfigError("output_dir", f"must be a string, got {output_dir!r}")

    return ExperimentConfig(
        sim=sim,
        sweep=_parse_sweep(data["sweep"]) if "sweep" in data else None,
        sr_compare=_parse_sr(data["sr_compare"]) if "sr_compare" in data else None,
        output_dir=output_dir,
    )


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate a JSON config file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"invalid JSON in {path}: {e}")
    return parse_config(data)
