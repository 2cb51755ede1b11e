"""Tests for configuration loading and the typed settings view."""

import pytest

from core.config import Config, EngineSettings, get_config, load_config


def test_defaults():
    config = Config.defaults()
    assert config.get("normalization.t_bound") == 8
    assert config.get("solver.shear_inflation_limit") == 4
    assert config.get("certificates.degree_bound") is None
    assert config.get("missing.key", "fallback") == "fallback"
    assert "membership" in config.get("stages")


def test_yaml_overrides_merge_with_defaults(tmp_path, monkeypatch):
    monkeypatch.setenv("ENGINE_WORKERS", "3")
    path = tmp_path / "config.yaml"
    path.write_text(
        "solver:\n  workers: ${ENGINE_WORKERS}\n  verify: false\nnormalization:\n  t_bound: 2\n",
        encoding="utf-8",
    )
    config = load_config(path)
    assert get_config() is config
    settings = EngineSettings.from_config(config)
    assert settings.workers == 3
    assert settings.verify is False
    assert settings.t_bound == 2
    assert settings.shear_inflation_limit == 4
    assert config.get_section("solver")["workers"] == "3"


def test_set_by_dotted_key():
    config = Config.defaults()
    config.set("solver.workers", 4)
    config.set("extra.nested.flag", True)
    assert config.get("solver.workers") == 4
    assert config.get("extra.nested.flag") is True
    assert Config.defaults().get("solver.workers") == 1


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        Config.load(tmp_path / "nope.yaml")


@pytest.mark.parametrize("key,value", [
    ("normalization.t_bound", -1),
    ("certificates.degree_bound", 0),
    ("normalization.selection", "greedy"),
])
def test_invalid_settings(key, value):
    config = Config.defaults()
    config.set(key, value)
    with pytest.raises(ValueError):
        EngineSettings.from_config(config)
