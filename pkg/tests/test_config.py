"""Tests for configuration loading and logging setup."""

import io
import logging

import pytest
import yaml

from peulab.exceptions import DomainError
from peulab.utils.config import Settings, load_config, save_config
from peulab.utils.logger import get_logger, setup_logging


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("PEULAB_SEED", raising=False)
    monkeypatch.delenv("PEULAB_PEU__ALPHA", raising=False)


def write_yaml(path, data):
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


def test_defaults(no_config):
    settings = load_config(no_config)
    assert settings.seed == 42
    assert settings.peu.alpha == 0.8
    assert settings.ellsberg.w_fail == 10.0
    assert settings.output_format == "md"


def test_file_values(tmp_path):
    settings = load_config(write_yaml(tmp_path / "config.yml", {"seed": 7, "peu": {"beta": 0.3}}))
    assert settings.seed == 7
    assert settings.peu.beta == 0.3
    assert settings.peu.alpha == 0.8


def test_environment_beats_file(tmp_path, monkeypatch):
    monkeypatch.setenv("PEULAB_SEED", "11")
    monkeypatch.setenv("PEULAB_PEU__ALPHA", "0.7")
    settings = load_config(write_yaml(tmp_path / "config.yml", {"seed": 7}))
    assert settings.seed == 11
    assert settings.peu.alpha == 0.7


@pytest.mark.parametrize("data", [
    {"workers": 0},
    {"seed": 7, "peu": {"alpha": 1.5}},
    ["seed", 7],
])
def test_invalid_values_are_rejected(tmp_path, data):
    with pytest.raises(DomainError):
        load_config(write_yaml(tmp_path / "config.yml", data))


def test_invalid_environment_value(no_config, monkeypatch):
    monkeypatch.setenv("PEULAB_PEU__ALPHA", "2")
    with pytest.raises(DomainError):
        load_config(no_config)


def test_save_and_reload(tmp_path):
    settings = Settings(seed=3, workers=2)
    path = str(tmp_path / "nested" / "config.yml")
    assert save_config(settings, path)
    assert load_config(path) == settings


def test_log_file(tmp_path):
    stream = io.StringIO()
    log_file = setup_logging("DEBUG", str(tmp_path / "logs"), stream=stream)
    get_logger("peulab.test").debug("sweep started")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "sweep started" in stream.getvalue()
    with open(log_file, encoding="utf-8") as f:
        assert "sweep started" in f.read()
    setup_logging("INFO")
