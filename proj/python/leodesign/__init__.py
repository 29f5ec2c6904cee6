"""LEO IoT constellation design: coverage, link budget, cost and optimizers.

Configs are flat dicts with dotted keys (``"optim.population"``); missing keys
take the defaults of the chosen profile.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Optional

from . import _core
from ._core import InfeasibleError, IoError, ParameterError, algorithms, cost, footprint

__all__ = [
    "InfeasibleError",
    "IoError",
    "ParameterError",
    "algorithms",
    "compare",
    "cost",
    "coverage",
    "default_config",
    "evaluate",
    "footprint",
    "link_budget",
    "min_elevation_for_coverage_angle",
    "normalize_config",
    "optimize",
    "run_experiment",
    "walker_elements",
]


def _text(config: Optional[Mapping[str, Any]]) -> str:
    return json.dumps(dict(config or {}))


def default_config(profile: str = "paper") -> dict:
    return json.loads(_core.default_config(profile))


def normalize_config(config: Mapping[str, Any], profile: str = "paper") -> dict:
    """Every key, validated. Raises ParameterError on unknown keys or bad values."""
    return json.loads(_core.normalize_config(_text(config), profile))


def evaluate(altitude_km: float, planes: float, sats_per_plane: float, inclination_deg: float,
             config: Optional[Mapping[str, Any]] = None, profile: str = "paper") -> dict:
    return json.loads(_core.evaluate_design(altitude_km, planes, sats_per_plane, inclination_deg,
                                            _text(config), profile))


def walker_elements(sats_per_plane: int, planes: int, phase_factor: int, altitude_km: float,
                    inclination_deg: float) -> list:
    return _core.walker_elements(sats_per_plane, planes, phase_factor, altitude_km, inclination_deg)


def min_elevation_for_coverage_angle(coverage_angle_deg: float, altitude_km: float) -> float:
    return _core.min_elevation_for_coverage_angle(coverage_angle_deg, altitude_km)


def coverage(altitude_km: float, planes: float, sats_per_plane: float, inclination_deg: float,
             min_elevation_deg: float, config: Optional[Mapping[str, Any]] = None,
             profile: str = "paper") -> dict:
    return _core.coverage(altitude_km, planes, sats_per_plane, inclination_deg, min_elevation_deg,
                          _text(config), profile)


def link_budget(altitude_km: float, min_elevation_deg: float, serving_count: float = 1.0,
                config: Optional[Mapping[str, Any]] = None, profile: str = "paper") -> dict:
    return _core.link_budget(altitude_km, min_elevation_deg, serving_count, _text(config), profile)


def optimize(algorithm: str = "improved", seed: int = 1,
             config: Optional[Mapping[str, Any]] = None, profile: str = "paper") -> dict:
    return _core.optimize(algorithm, seed, _text(config), profile)


def run_experiment(algorithm: str, out: str, config: Optional[Mapping[str, Any]] = None,
                   profile: str = "paper") -> str:
    return _core.run_experiment(algorithm, str(out), _text(config), profile)


def compare(algorithms: Iterable[str], seeds: Iterable[int] = (), out: str = "",
            config: Optional[Mapping[str, Any]] = None, profile: str = "paper") -> list:
    return _core.compare(list(algorithms), list(seeds), str(out), _text(config), profile)
