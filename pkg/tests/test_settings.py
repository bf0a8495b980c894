import pytest

from qtflows.errors import ConfigurationError
from qtflows.settings import load_settings


def test_default_profile():
    settings = load_settings()
    assert settings.profile == "ci"
    assert settings.n_max == 6
    assert settings.seed == 2024
    assert settings.workers == 1


def test_named_profile():
    settings = load_settings("nightly")
    assert settings.n_max == 8
    assert settings.workers == 4


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("QTFLOWS_SCAN_NMAX", "4")
    monkeypatch.setenv("QTFLOWS_WORKERS", "2")
    settings = load_settings()
    assert settings.n_max == 4
    assert settings.workers == 2


def test_profile_from_environment(monkeypatch):
    monkeypatch.setenv("QTFLOWS_PROFILE", "nightly")
    assert load_settings().profile == "nightly"


def test_bad_override(monkeypatch):
    monkeypatch.setenv("QTFLOWS_SCAN_NMAX", "many")
    with pytest.raises(ConfigurationError):
        load_settings()


def test_unknown_profile():
    with pytest.raises(ConfigurationError):
        load_settings("weekly")


def test_custom_budget_file(tmp_path):
    path = tmp_path / "budgets.yaml"
    path.write_text("default_profile: tiny\nprofiles:\n  tiny:\n    n_max: 3\n    workers: 1\n")
    settings = load_settings(path=path)
    assert settings.profile == "tiny"
    assert settings.n_max == 3
    assert settings.samples == 50


def test_invalid_budget_values(tmp_path):
    path = tmp_path / "budgets.yaml"
    path.write_text("profiles:\n  ci:\n    n_max: 0\n")
    with pytest.raises(ConfigurationError):
        load_settings(path=path)
