"""
Numeric tolerances and caps, loadable from YAML
"""
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError

BALL_CAP_ENV = "HOROFOL_BALL_CAP"


@dataclass(frozen=True)
class Settings:
    """Every named tolerance and cap used by the library"""

    # hyperbolic plane kernel
    ERROR_TOL: float = 1e-12
    EQUALITY_TOL: float = 1e-9
    TRACE_TOL: float = 1e-9
    BOUNDARY_CAUCHY_TOL: float = 1e-9
    BOUNDARY_T_MAX: float = 2.0 ** 16
    LIMIT_RAY_T: float = 40.0

    # alignment and contracting machinery
    SAMPLE_STEP: float = 0.01
    CONTRACTING_TOL: float = 1e-6
    SQUEEZE_GRID_STEP: float = 0.25
    SQUEEZE_CAP: float = 64.0
    AXIS_MARGIN: float = 0.1

    # discrete groups
    BALL_CAP: int = 5_000_000
    DEDUP_TOL: float = 1e-9
    ANTIPODAL_TOL: float = 1e-6
    GROWTH_FLOOR: float = 0.2
    CONVERGENCE_TAIL: float = 0.25
    DIV_FACTORS_STEP: int = 2
    DIV_STABILITY_TOL: float = 1e-9

    # Patterson-Sullivan machinery
    DENSITY_S_OFFSET: float = 0.01
    CELLS_PER_FACTOR: int = 64
    DELTA_BUCKET_WIDTH: float = 0.25
    DELTA_DROP_LOW: float = 0.2
    DELTA_DROP_HIGH: float = 0.1
    DELTA_MIN_BUCKETS: int = 8
    DIVERGENCE_GROWTH: float = 0.05
    RESIDUAL_MASS_FLOOR: float = 1e-3

    # verification harness
    VERIFY_BALL_LENGTH: int = 6
    DIV_FACTORS_LENGTH: int = 10

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Settings":
        """Build settings from defaults, an optional YAML file and the environment"""
        overrides: Dict[str, Any] = {}

        if path:
            config_file = Path(path)
            try:
                data = yaml.safe_load(config_file.read_text()) or {}
            except (OSError, yaml.YAMLError) as e:
                raise ConfigError(f"Cannot read config {path}: {e}") from e
            if not isinstance(data, dict):
                raise ConfigError(f"Config {path} must be a mapping of names to values")
            overrides.update({str(k).upper(): v for k, v in data.items()})

        env_cap = os.environ.get(BALL_CAP_ENV)
        if env_cap:
            overrides["BALL_CAP"] = env_cap

        return cls().with_overrides(overrides)

    def with_overrides(self, overrides: Dict[str, Any]) -> "Settings":
        """Return a copy with the given fields replaced, coercing to the field type"""
        known = {f.name: f for f in fields(self)}
        values = {}
        for name, raw in overrides.items():
            if name not in known:
                raise ConfigError(f"Unknown setting: {name}")
            target = int if known[name].type in (int, "int") else float
            try:
                values[name] = target(raw)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Setting {name} expects {target.__name__}, got {raw!r}") from e
        return replace(self, **values)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for report echoes"""
        return {f.name: getattr(self, f.name) for f in fields(self)}


_active = Settings()


def get_settings() -> Settings:
    """Process-wide settings record"""
    return _active


def use_settings(settings: Settings) -> None:
    """Install a settings record for the rest of the process"""
    global _active
    _active = settings
