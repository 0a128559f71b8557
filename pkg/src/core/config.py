"""
配置管理模块
"""

import toml
from pathlib import Path
from typing import Any, Dict, Optional
from dataclasses import asdict, dataclass, field, fields
from rich.console import Console

from .exceptions import ConfigurationError

console = Console(stderr=True)


@dataclass
class TruncationConfig:
    """截断配置"""
    max_level: int = 3
    charge_window: int = 3
    classify_horizon: int = 8
    escape_depth: int = 2


@dataclass
class VerifyConfig:
    """验证配置"""
    seed: int = 20240127
    samples: int = 500
    theta_window: int = 2


@dataclass
class DisplayConfig:
    """显示配置"""
    format: str = "text"
    table_style: str = "simple"
    show_welcome: bool = True


@dataclass
class LoggingConfig:
    """日志配置"""
    level: str = "WARNING"
    file: str = "~/.n2verma/logs/n2verma.log"
    max_size: int = 10 * 1024 * 1024
    backup_count: int = 3
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass
class Config:
    """主配置类"""
    truncation: TruncationConfig = field(default_factory=TruncationConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    display: DisplayConfig = field(default_factory=DisplayConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_dir = Path.home() / ".n2verma"
        self.config_file = Path(config_file) if config_file else self.config_dir / "config.toml"
        self.config = Config()
        self.load_config()

    def sections(self) -> Dict[str, Any]:
        return {f.name: getattr(self.config, f.name) for f in fields(self.config)}

    def load_config(self) -> None:
        """加载配置文件 (文件不存在时使用默认配置)"""
        if not self.config_file.exists():
            return
        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                data = toml.load(f)
        except (OSError, toml.TomlDecodeError) as e:
            raise ConfigurationError(f"加载配置文件失败: {self.config_file}: {e}")

        for section, section_obj in self.sections().items():
            for key, value in data.get(section, {}).items():
                if hasattr(section_obj, key):
                    setattr(section_obj, key, self._coerce(getattr(section_obj, key), value))
                else:
                    console.print(f"[yellow]⚠️  忽略未知配置项: {section}.{key}[/yellow]")

    def save_config(self) -> None:
        """保存配置到文件"""
        config_data = {name: asdict(obj) for name, obj in self.sections().items()}
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                toml.dump(config_data, f)
        except OSError as e:
            raise ConfigurationError(f"保存配置文件失败: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置值"""
        value: Any = self.config
        try:
            for k in key.split('.'):
                value = getattr(value, k)
            return value
        except AttributeError:
            return default

    def set(self, key: str, value: Any) -> None:
        """设置配置值并保存"""
        keys = key.split('.')
        if len(keys) != 2:
            raise ConfigurationError("配置键必须是 'section.key' 格式")

        section, config_key = keys
        section_obj = self.sections().get(section)
        if section_obj is None:
            raise ConfigurationError(f"未知的配置节: {section}")
        if not hasattr(section_obj, config_key):
            raise ConfigurationError(f"未知的配置项: {section}.{config_key}")

        setattr(section_obj, config_key, self._coerce(getattr(section_obj, config_key), value))
        self.save_config()

    @staticmethod
    def _coerce(current_value: Any, value: Any) -> Any:
        """按默认值类型转换"""
        try:
            if isinstance(current_value, bool):
                return str(value).lower() in ('true', '1', 'yes', 'on')
            if isinstance(current_value, int):
                return int(value)
            if isinstance(current_value, float):
                return float(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f"配置值类型错误: {value!r}")
        return value


# 全局配置管理器实例
_config_manager: Optional[ConfigManager] = None


def get_config(config_file: Optional[str] = None) -> ConfigManager:
    """获取配置管理器实例"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_file)
    return _config_manager


def init_config(config_file: Optional[str] = None) -> ConfigManager:
    """重新初始化配置管理器"""
    global _config_manager
    _config_manager = ConfigManager(config_file)
    return _config_manager
