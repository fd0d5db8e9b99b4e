"""Configuration module tests"""

import pytest

from hots.core.config import (
    Config,
    ExperimentSettings,
    SolverConfig,
    load_config,
)


def test_load_config_default():
    config = load_config()
    assert config is not None
    assert config.solvers.tol == 1e-8
    assert config.solvers.maxit == 100000
    assert config.coefficients.dense_limit == 64
    assert config.experiments.fig1_samples == 10000


def test_config_from_dict_partial():
    data = {
        "solvers": {"tol": 1e-6},
    }
    config = Config.from_dict(data)
    assert config.solvers.tol == 1e-6
    assert config.solvers.maxit == 100000  # default value


def test_config_from_dict_ignores_unknown_keys():
    config = Config.from_dict({"graph": {"alpha": 0.5, "colour": "red"}, "unknown": {"a": 1}})
    assert config.graph.alpha == 0.5
    assert not hasattr(config.graph, "colour")


def test_solver_config_defaults():
    cfg = SolverConfig()
    assert cfg.schedule == "harmonic"
    assert cfg.left_weight == 0.5


def test_experiment_settings_defaults():
    cfg = ExperimentSettings()
    assert cfg.fig4_reference == [0.6, 0.6]
    assert [0.6, 0.0] in cfg.fig4_comparisons


def test_config_file_overrides_defaults(tmp_path):
    path = tmp_path / "custom.yaml"
    path.write_text("solvers:\n  maxit: 50\ngraph:\n  lcc: true\n")
    config = load_config(str(path))
    assert config.solvers.maxit == 50
    assert config.graph.lcc is True
    assert config.solvers.tol == 1e-8


def test_missing_config_file_raises(tmp_path):
    with pytest.raises(FileNotFoundError, match="Config file not found"):
        load_config(str(tmp_path / "absent.yaml"))


def test_explicit_overrides_win(monkeypatch):
    monkeypatch.setenv("HOTS_SOLVERS_MAXIT", "7")
    config = load_config(overrides={"solvers": {"maxit": 9}})
    assert config.solvers.maxit == 9


def test_env_override_uses_section_prefixes(monkeypatch):
    monkeypatch.setenv("HOTS_SOLVERS_TOL", "1e-6")
    monkeypatch.setenv("HOTS_GRAPH__LCC", "true")
    monkeypatch.setenv("HOTS_EXPERIMENTS_THREADS", "null")
    config = load_config()
    assert config.solvers.tol == 1e-6
    assert config.graph.lcc is True
    assert config.experiments.threads is None


def test_env_values_parse_as_yaml_scalars(monkeypatch):
    monkeypatch.setenv("HOTS_SOLVERS_TOL", "1e-10")
    monkeypatch.setenv("HOTS_SOLVERS_MAXIT", "250")
    monkeypatch.setenv("HOTS_SOLVERS_SCHEDULE", "constant:0.5")
    monkeypatch.setenv("HOTS_GRAPH__LCC", "yes")
    monkeypatch.setenv("HOTS_EXPERIMENTS_FIG4_REFERENCE", "[0.7, 0.5]")
    monkeypatch.setenv("HOTS_LOGGING_LEVEL", "DEBUG")
    config = load_config()
    assert config.solvers.tol == 1e-10
    assert isinstance(config.solvers.tol, float)
    assert config.solvers.maxit == 250
    assert config.solvers.schedule == "constant:0.5"
    assert config.graph.lcc is True
    assert config.experiments.fig4_reference == [0.7, 0.5]
    assert config.logging.level == "DEBUG"


def test_unsectioned_env_vars_are_ignored(monkeypatch):
    monkeypatch.setenv("HOTS_SOCFB_EDGES", "/data/socfb.txt")
    config = load_config()
    assert config.graph.index_base == "auto"
