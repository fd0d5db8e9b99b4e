"""Configuration loading and validation"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import yaml


@dataclass
class TensorConfig:
    validation_tol: float = 1e-12
    closure_tol: float = 1e-10


@dataclass
class CoefficientConfig:
    dense_limit: int = 64
    subset_limit: int = 20


@dataclass
class SolverConfig:
    tol: float = 1e-8
    maxit: int = 100000
    schedule: str = "harmonic"
    grid_points: int = 101
    refine_tol: float = 1e-4
    left_weight: float = 0.5


@dataclass
class GraphConfig:
    index_base: str = "auto"
    lcc: bool = False
    alpha: float = 0.6
    beta: float = 0.6


@dataclass
class ExperimentSettings:
    seed: int = 0
    threads: Optional[int] = None
    format: str = "csv"
    output_dir: str = "output"
    fig1_samples: int = 10000
    fig1_n_min: int = 2
    fig1_n_max: int = 10
    alpha_step: float = 0.01
    beta_step: float = 0.05
    sigma_step: float = 0.001
    fig4_reference: List[float] = field(default_factory=lambda: [0.6, 0.6])
    fig4_comparisons: List[List[float]] = field(
        default_factory=lambda: [[0.6, 0.0], [0.7, 0.7], [0.9, 0.1]]
    )


@dataclass
class LoggingConfig:
    level: str = "INFO"


@dataclass
class Config:
    """Unified configuration"""

    tensors: TensorConfig = field(default_factory=TensorConfig)
    coefficients: CoefficientConfig = field(default_factory=CoefficientConfig)
    solvers: SolverConfig = field(default_factory=SolverConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    experiments: ExperimentSettings = field(default_factory=ExperimentSettings)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        config = cls()
        section_types = {
            "tensors": TensorConfig,
            "coefficients": CoefficientConfig,
            "solvers": SolverConfig,
            "graph": GraphConfig,
            "experiments": ExperimentSettings,
            "logging": LoggingConfig,
        }
        for section, section_data in data.items():
            if section in section_types and section_data is not None:
                dc_type = section_types[section]
                kwargs = {
                    k: v
                    for k, v in section_data.items()
                    if k in dc_type.__dataclass_fields__
                }
                setattr(config, section, dc_type(**kwargs))
        return config


def load_config(
    config_path: Optional[str] = None,
    overrides: Optional[dict] = None,
) -> Config:
    """
    Load configuration with hierarchical override: defaults → file → env vars → overrides
    """
    # 1. Default configuration (the packaged defaults still apply without the repo yaml)
    data: dict = {}
    default_path = Path(__file__).parent.parent.parent / "config" / "default.yaml"
    if default_path.exists():
        with open(default_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

    # 2. Merge file configuration
    if config_path:
        if not os.path.exists(config_path):
            raise FileNotFoundError(f"Config file not found: {config_path}")
        with open(config_path, "r", encoding="utf-8") as f:
            file_data = yaml.safe_load(f) or {}
        data = _deep_merge(data, file_data)

    # 3. Environment variables (e.g., HOTS_SOLVERS_TOL, HOTS_GRAPH__LCC)
    data = _deep_merge(data, _get_env_overrides())

    # 4. Explicit overrides
    if overrides:
        data = _deep_merge(data, overrides)

    return Config.from_dict(data)


def _deep_merge(base: dict, override: dict) -> dict:
    result = base.copy()
    for k, v in override.items():
        if k in result and isinstance(result[k], dict) and isinstance(v, dict):
            result[k] = _deep_merge(result[k], v)
        else:
            result[k] = v
    return result


def _coerce(value: str):
    """YAML scalar parsing; PyYAML reads exponent-only floats such as 1e-6 as strings"""
    try:
        parsed = yaml.safe_load(value)
    except yaml.YAMLError:
        return value
    if isinstance(parsed, str) and any(c.isdigit() for c in parsed):
        try:
            return float(parsed)
        except ValueError:
            return parsed
    return parsed


def _get_env_overrides() -> dict:
    prefix = "HOTS_"
    known_sections = sorted(Config.__dataclass_fields__.keys(), key=len, reverse=True)
    result: dict = {}
    for key, value in os.environ.items():
        if not key.startswith(prefix):
            continue
        raw_key = key[len(prefix):].lower()
        parts = None

        if "__" in raw_key:
            parts = raw_key.split("__")
        else:
            for section in known_sections:
                section_prefix = f"{section}_"
                if raw_key.startswith(section_prefix):
                    parts = [section, raw_key[len(section_prefix):]]
                    break

        # unsectioned variables (HOTS_SOCFB_EDGES, ...) are not configuration
        if parts is None or parts[0] not in known_sections:
            continue

        d = result
        for p in parts[:-1]:
            d = d.setdefault(p, {})
        d[parts[-1]] = _coerce(value)
    return result
