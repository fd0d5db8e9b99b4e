from .figures import (
    ExperimentResult,
    fig1_scatter,
    fig2_mlpr_sweep,
    fig3_triangle_grid,
    fig4_solution_scatter,
    fig5_shift_sweep,
    grid,
)
from .parallel import run_tasks, spawn_seeds
from .pipeline import EXPERIMENTS, ExperimentConfig, ExperimentPipeline, write_result

__all__ = [
    "ExperimentResult",
    "fig1_scatter",
    "fig2_mlpr_sweep",
    "fig3_triangle_grid",
    "fig4_solution_scatter",
    "fig5_shift_sweep",
    "grid",
    "run_tasks",
    "spawn_seeds",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ExperimentPipeline",
    "write_result",
]
