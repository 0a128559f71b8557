"""
测试公共夹具
"""

import random
from fractions import Fraction

import pytest
import toml

from src.core import config as config_module
from src.core.scalar import RatFun


@pytest.fixture
def t():
    """符号参数 t"""
    return RatFun.t()


@pytest.fixture
def generic_point():
    """远离所有奇异轨迹的有理参数 (h, t)"""
    return RatFun(Fraction(1, 3)), RatFun(Fraction(7, 5))


@pytest.fixture
def rng():
    return random.Random(20240127)


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    """隔离的配置文件: 不写日志文件, 不显示欢迎信息"""
    path = tmp_path / "config.toml"
    path.write_text(
        toml.dumps(
            {
                "display": {"show_welcome": False},
                "logging": {"file": ""},
            }
        ),
        encoding="utf-8",
    )
    monkeypatch.setattr(config_module, "_config_manager", None)
    return path
