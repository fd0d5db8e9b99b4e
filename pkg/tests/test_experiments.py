"""Experiment pipeline tests"""

import csv
import json

import numpy as np
import pytest

from hots.core.config import ExperimentSettings
from hots.core.errors import InvalidInputError, InvariantViolation
from hots.experiments import (
    ExperimentConfig,
    ExperimentPipeline,
    fig1_scatter,
    fig2_mlpr_sweep,
    fig3_triangle_grid,
    fig4_solution_scatter,
    fig5_shift_sweep,
    grid,
    run_tasks,
    spawn_seeds,
)
from hots.graph import TrianglePageRank, erdos_renyi
from hots.tensors import DenseTensor3


def test_grid_has_no_rounding_drift():
    np.testing.assert_array_equal(grid(0.25), [0.0, 0.25, 0.5, 0.75, 1.0])
    assert grid(0.01)[37] == 0.37
    assert grid(0.1, include_stop=False)[-1] == 0.9


def test_run_tasks_keeps_task_order():
    assert run_tasks(lambda x: x * x, list(range(20)), threads=4, progress=False) == [x * x for x in range(20)]
    assert run_tasks(lambda x: -x, [1, 2], threads=1, progress=False) == [-1, -2]


def test_spawned_seeds_are_reproducible():
    a = [np.random.default_rng(s).random() for s in spawn_seeds(7, 3)]
    b = [np.random.default_rng(s).random() for s in spawn_seeds(7, 3)]
    assert a == b
    assert len(set(a)) == 3


def test_fig1_rows_and_determinism():
    single = fig1_scatter(samples=30, n_min=2, n_max=5, seed=1, threads=1, progress=False)
    pooled = fig1_scatter(samples=30, n_min=2, n_max=5, seed=1, threads=4, progress=False)
    assert single.rows == pooled.rows
    assert len(single.rows) == 30
    for row in single.rows:
        assert 2 <= row["n"] <= 5
        assert row["T"] <= row["two_minus_2delta"] + 1e-12
    assert single.summary["T_le_TH_violations"] >= 0
    with pytest.raises(InvalidInputError):
        fig1_scatter(samples=0)


def test_fig2_sweep(p1):
    result = fig2_mlpr_sweep(p1, grid(0.1), threads=1, progress=False)
    first = result.rows[0]
    assert first["alpha"] == 0.0
    assert first["two_alpha"] == 0.0
    assert first["TH_Palpha"] == pytest.approx(0.0, abs=1e-12)
    assert first["two_minus_2delta_Palpha"] == pytest.approx(0.0, abs=1e-12)
    t = result.summary["T"]
    for row in result.rows:
        assert row["alpha_T"] == pytest.approx(row["alpha"] * t)
        assert row["alpha_T"] <= row["two_alpha"] + 1e-12
        for k in (1, 2, 3):
            assert row["alpha_T"] <= row[f"alpha_theta_{k}"] + 1e-12
    assert result.summary["alpha_T_certified_up_to"] is not None


def test_fig3_grid(k4):
    result = fig3_triangle_grid(k4, [0.0, 0.6], [0.0, 0.6], threads=1, progress=False)
    assert len(result.rows) == 4
    for row in result.rows:
        assert row["converged"]
        assert row["error"] == ""
        if row["alpha"] == 0.0:
            assert row["x_minus_v"] <= 1e-12
        if row["beta"] == 0.0:
            assert row["x_minus_z"] <= 10 * 1e-8
    assert result.summary["triangles"] == 4


def test_fig3_records_cell_failures(k4):
    result = fig3_triangle_grid(k4, [0.5], [1.5], threads=1, progress=False)
    assert not result.rows[0]["converged"]
    assert "beta" in result.rows[0]["error"]


def test_fig3_keeps_rows_after_invariant_failure(k4, monkeypatch):
    original = TrianglePageRank.solve

    def failing(self, alpha, beta, *args, **kwargs):
        if (alpha, beta) == (0.6, 0.6):
            raise InvariantViolation("||x - z||_1 bound failed")
        return original(self, alpha, beta, *args, **kwargs)

    monkeypatch.setattr(TrianglePageRank, "solve", failing)
    result = fig3_triangle_grid(k4, [0.0, 0.6], [0.0, 0.6], threads=2, progress=False)
    assert len(result.rows) == 4
    failed = [row for row in result.rows if row["error"]]
    assert [(row["alpha"], row["beta"]) for row in failed] == [(0.6, 0.6)]
    assert "bound failed" in failed[0]["error"]
    assert not failed[0]["converged"]
    assert all(row["converged"] for row in result.rows if not row["error"])
    assert result.summary["unconverged_cells"] == 1


def test_fig4_correlations():
    graph = erdos_renyi(40, 0.2, seed=2)
    result = fig4_solution_scatter(graph, (0.6, 0.6), [(0.6, 0.6), (0.6, 0.0)], threads=1, progress=False)
    assert len(result.rows) == 2 * 40
    assert result.summary["pearson"]["0.6,0.6"] == 1.0
    assert -1.0 <= result.summary["pearson"]["0.6,0"] <= 1.0
    assert result.rows[0]["node"] == 1


def test_fig5_rank_one_curve():
    result = fig5_shift_sweep(DenseTensor3.rank_one([0.2, 0.3, 0.5]), grid(0.1))
    for row in result.rows:
        assert row["T"] == pytest.approx(1.0 - row["sigma"], abs=1e-12)


@pytest.mark.parametrize("name", ["p1", "p2"])
def test_fig5_builtin_has_interior_minimum(name, request):
    result = fig5_shift_sweep(request.getfixturevalue(name), grid(0.01))
    assert result.rows[0]["T"] == pytest.approx(1.0, abs=1e-12)
    assert result.summary["T_min"] < 1.0
    curve = np.array([row["T"] for row in result.rows])
    # convex on an even grid: second differences are nonnegative
    assert np.all(np.diff(curve, 2) >= -1e-10)
    assert 0.0 < result.summary["sigma_min"] < 1.0


def test_experiment_config_validation():
    assert ExperimentConfig("fig1").experiment == "fig1_scatter"
    with pytest.raises(InvalidInputError, match="unknown experiment"):
        ExperimentConfig("fig9")
    with pytest.raises(InvalidInputError, match="format"):
        ExperimentConfig("fig1", format="xml")
    with pytest.raises(InvalidInputError, match="alpha_step"):
        ExperimentConfig("fig2", alpha_step=0.0)
    with pytest.raises(InvalidInputError):
        ExperimentConfig("fig4", reference=(1.0, 0.5))


def test_experiment_config_from_settings():
    settings = ExperimentSettings(fig1_samples=12, sigma_step=0.05)
    cfg = ExperimentConfig.from_settings("fig5", settings, sigma_step=None, samples=3)
    assert cfg.sigma_step == 0.05
    assert cfg.samples == 3


def test_pipeline_needs_inputs(tmp_path):
    pipeline = ExperimentPipeline(ExperimentConfig("fig5", output=str(tmp_path / "a.csv")), verbose=False)
    with pytest.raises(InvalidInputError, match="tensor"):
        pipeline.run()
    pipeline = ExperimentPipeline(ExperimentConfig("fig3", output=str(tmp_path / "b.csv")), verbose=False)
    with pytest.raises(InvalidInputError, match="graph"):
        pipeline.run()


def test_pipeline_writes_deterministic_csv(tmp_path):
    paths = [tmp_path / "run1" / "fig1.csv", tmp_path / "run2" / "fig1.csv"]
    for path in paths:
        cfg = ExperimentConfig("fig1", seed=3, samples=10, n_max=4, output=str(path))
        ExperimentPipeline(cfg, verbose=False).run()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    with open(paths[0], newline="") as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == ["n", "T", "TH", "two_minus_2delta"]
    assert len(rows) == 10


def test_pipeline_writes_json(tmp_path, p2):
    cfg = ExperimentConfig("fig5", format="json", sigma_step=0.25, tensor=p2)
    pipeline = ExperimentPipeline(cfg, output_dir=str(tmp_path), verbose=False)
    pipeline.run()
    data = json.loads((tmp_path / "fig5_shift_sweep.json").read_text())
    assert data["experiment"] == "fig5_shift_sweep"
    assert [row["sigma"] for row in data["rows"]] == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_pipeline_applies_lcc(tmp_path):
    graph = erdos_renyi(30, 0.05, seed=0)
    cfg = ExperimentConfig(
        "fig3", beta_step=0.5, maxit=2000, lcc=True, graph=graph, threads=1, output=str(tmp_path / "g.csv")
    )
    result = ExperimentPipeline(cfg, verbose=False).run()
    assert result.summary["n"] < 30
    assert len(result.rows) == 2 * 3
