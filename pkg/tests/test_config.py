"""
配置管理与日志测试
"""

import logging

import pytest
import toml

from src.core.config import Config, ConfigManager
from src.core.exceptions import ConfigurationError
from src.utils.logger import get_logger


def test_defaults_when_file_missing(tmp_path):
    manager = ConfigManager(str(tmp_path / "missing.toml"))
    assert manager.config == Config()
    assert manager.get("truncation.max_level") == 3
    assert manager.get("verify.seed") == 20240127
    assert manager.get("display.nothing", "fallback") == "fallback"


def test_load_and_coerce(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        toml.dumps({"truncation": {"max_level": "5"}, "display": {"show_welcome": "no", "format": "json"}}),
        encoding="utf-8",
    )
    manager = ConfigManager(str(path))
    assert manager.get("truncation.max_level") == 5
    assert manager.get("display.show_welcome") is False
    assert manager.get("display.format") == "json"


def test_set_persists(tmp_path):
    path = tmp_path / "config.toml"
    manager = ConfigManager(str(path))
    manager.set("verify.samples", "42")
    reloaded = ConfigManager(str(path))
    assert reloaded.get("verify.samples") == 42


@pytest.mark.parametrize("key", ["samples", "verify.unknown", "unknown.samples"])
def test_set_rejects_bad_keys(tmp_path, key):
    manager = ConfigManager(str(tmp_path / "config.toml"))
    with pytest.raises(ConfigurationError):
        manager.set(key, "1")


def test_set_rejects_bad_values(tmp_path):
    manager = ConfigManager(str(tmp_path / "config.toml"))
    with pytest.raises(ConfigurationError):
        manager.set("truncation.max_level", "many")


def test_malformed_file(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[truncation\nmax_level = ", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        ConfigManager(str(path))


def test_logger_namespace():
    logger = get_logger("src.core.modules")
    assert logger.name == "n2verma.core.modules"
    assert isinstance(logger, logging.Logger)
