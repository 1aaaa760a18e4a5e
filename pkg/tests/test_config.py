"""
Tests for settings loading and overrides
"""
import pytest

from horofol.config import BALL_CAP_ENV, Settings, get_settings, use_settings
from horofol.errors import ConfigError


def test_defaults():
    settings = Settings()
    assert settings.BALL_CAP == 5_000_000
    assert settings.CELLS_PER_FACTOR == 64
    assert settings.to_dict()['SQUEEZE_CAP'] == 64.0


def test_yaml_overrides(tmp_path):
    path = tmp_path / "horofol.yaml"
    path.write_text("ball_cap: 1000\nequality_tol: 1.0e-6\n")
    settings = Settings.load(str(path))
    assert settings.BALL_CAP == 1000
    assert isinstance(settings.BALL_CAP, int)
    assert settings.EQUALITY_TOL == 1e-6


def test_empty_yaml(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert Settings.load(str(path)) == Settings()


def test_unknown_key(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("no_such_setting: 1\n")
    with pytest.raises(ConfigError):
        Settings.load(str(path))


def test_non_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        Settings.load(str(path))


def test_bad_value():
    with pytest.raises(ConfigError):
        Settings().with_overrides({'CELLS_PER_FACTOR': 'many'})


def test_environment_cap(monkeypatch):
    monkeypatch.setenv(BALL_CAP_ENV, "123")
    assert Settings.load().BALL_CAP == 123


def test_use_settings():
    custom = Settings().with_overrides({'GROWTH_FLOOR': 0.5})
    use_settings(custom)
    assert get_settings().GROWTH_FLOOR == 0.5
