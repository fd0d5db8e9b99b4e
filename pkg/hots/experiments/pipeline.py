"""Experiment pipeline: build inputs, run one figure experiment, write its data"""

import csv
import json
import logging
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Tuple

try:
    from colorama import init, Fore, Style
    init(autoreset=True)
except ImportError:
    class _DummyColor:
        RESET_ALL = ""

        def __getattr__(self, name):
            return ""

    Fore = _DummyColor()
    Style = _DummyColor()

from ..core.config import ExperimentSettings
from ..core.errors import InvalidInputError
from ..graph.loader import Graph, largest_connected_component
from .figures import (
    ExperimentResult,
    fig1_scatter,
    fig2_mlpr_sweep,
    fig3_triangle_grid,
    fig4_solution_scatter,
    fig5_shift_sweep,
    grid,
)

logger = logging.getLogger(__name__)

EXPERIMENTS = ("fig1_scatter", "fig2_mlpr_sweep", "fig3_triangle_grid", "fig4_solution_scatter", "fig5_shift_sweep")
ALIASES = {name.split("_")[0]: name for name in EXPERIMENTS}


@dataclass
class ExperimentConfig:
    """One experiment run

    ``tensor`` feeds fig2 and fig5, ``graph`` feeds fig3 and fig4.
    """

    experiment: str
    seed: Optional[int] = 0
    output: Optional[str] = None
    format: str = "csv"
    threads: Optional[int] = None
    samples: int = 10000
    n_min: int = 2
    n_max: int = 10
    alpha_step: float = 0.01
    beta_step: float = 0.05
    sigma_step: float = 0.001
    left_weight: float = 0.5
    tol: float = 1e-8
    maxit: int = 100000
    lcc: bool = False
    reference: Tuple[float, float] = (0.6, 0.6)
    comparisons: List[Tuple[float, float]] = field(default_factory=lambda: [(0.6, 0.0), (0.7, 0.7)])
    tensor: Any = None
    graph: Optional[Graph] = None

    def __post_init__(self):
        self.experiment = ALIASES.get(self.experiment, self.experiment)
        if self.experiment not in EXPERIMENTS:
            raise InvalidInputError(f"unknown experiment {self.experiment!r}; choose from {list(ALIASES)}")
        if self.format not in ("csv", "json"):
            raise InvalidInputError(f"format must be csv or json, got {self.format!r}")
        if self.samples < 1:
            raise InvalidInputError("sample count must be >= 1")
        for name in ("alpha_step", "beta_step", "sigma_step"):
            step = getattr(self, name)
            if not 0.0 < step <= 1.0:
                raise InvalidInputError(f"{name} must lie in (0, 1], got {step}")
        for a, b in [tuple(self.reference)] + [tuple(c) for c in self.comparisons]:
            if not (0.0 <= a < 1.0 and 0.0 <= b <= 1.0):
                raise InvalidInputError(f"(alpha, beta) = ({a}, {b}) outside [0, 1) x [0, 1]")

    @classmethod
    def from_settings(cls, experiment: str, settings: ExperimentSettings, **overrides) -> "ExperimentConfig":
        base = dict(
            experiment=experiment,
            seed=settings.seed,
            format=settings.format,
            threads=settings.threads,
            samples=settings.fig1_samples,
            n_min=settings.fig1_n_min,
            n_max=settings.fig1_n_max,
            alpha_step=settings.alpha_step,
            beta_step=settings.beta_step,
            sigma_step=settings.sigma_step,
            reference=tuple(settings.fig4_reference),
            comparisons=[tuple(c) for c in settings.fig4_comparisons],
        )
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)


def _format_value(value: Any) -> Any:
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def write_result(result: ExperimentResult, path: str, fmt: str = "csv") -> None:
    """CSV with 17 significant digits, or JSON with rows and summary"""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        if fmt == "json":
            json.dump(_json_value(result.to_dict()), f, indent=2)
            f.write("\n")
            return
        writer = csv.DictWriter(f, fieldnames=result.columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in result.rows:
            writer.writerow({k: _format_value(v) for k, v in row.items()})


class ExperimentPipeline:
    """Run one experiment and persist its rows"""

    def __init__(self, config: ExperimentConfig, output_dir: str = "output", verbose: bool = True):
        self.config = config
        self.output_dir = output_dir
        self.verbose = verbose

    @property
    def output_path(self) -> str:
        if self.config.output:
            return self.config.output
        return str(Path(self.output_dir) / f"{self.config.experiment}.{self.config.format}")

    def _graph(self) -> Graph:
        if self.config.graph is None:
            raise InvalidInputError(f"{self.config.experiment} needs a graph (--edges or --random-graph)")
        graph = self.config.graph
        if self.config.lcc:
            graph, _ = largest_connected_component(graph)
        return graph

    def _tensor(self):
        if self.config.tensor is None:
            raise InvalidInputError(f"{self.config.experiment} needs a tensor (--tensor or --builtin)")
        return self.config.tensor

    def build(self) -> ExperimentResult:
        cfg = self.config
        progress = self.verbose
        if cfg.experiment == "fig1_scatter":
            return fig1_scatter(cfg.samples, cfg.n_min, cfg.n_max, cfg.seed, cfg.threads, progress)
        if cfg.experiment == "fig2_mlpr_sweep":
            return fig2_mlpr_sweep(self._tensor(), grid(cfg.alpha_step), cfg.threads, progress)
        if cfg.experiment == "fig3_triangle_grid":
            axis = grid(cfg.beta_step)
            alphas = axis[axis < 1.0]
            return fig3_triangle_grid(self._graph(), alphas, axis, None, cfg.tol, cfg.maxit, cfg.threads, progress)
        if cfg.experiment == "fig4_solution_scatter":
            return fig4_solution_scatter(
                self._graph(), cfg.reference, cfg.comparisons, None, cfg.tol, cfg.maxit, cfg.threads, progress
            )
        return fig5_shift_sweep(self._tensor(), grid(cfg.sigma_step), cfg.left_weight)

    def run(self) -> ExperimentResult:
        if self.verbose:
            print(f"{Fore.CYAN}[HOTS] Experiment {self.config.experiment}{Style.RESET_ALL}")
        start = time.time()
        result = self.build()
        write_result(result, self.output_path, self.config.format)
        elapsed = time.time() - start
        logger.info(f"{self.config.experiment}: {len(result.rows)} rows in {elapsed:.1f}s")
        if self.verbose:
            print(f"\n{Fore.GREEN}Wrote {len(result.rows)} rows{Style.RESET_ALL}")
            for key, value in result.summary.items():
                print(f"  {key}: {value}")
            print(f"Time: {elapsed:.1f}s")
            print(f"Output: {self.output_path}")
        return result
