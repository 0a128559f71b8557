"""
日志配置
"""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from ..core.config import LoggingConfig

ROOT_LOGGER = "n2verma"

_configured = False


def setup_logging(config: Optional[LoggingConfig] = None, debug: bool = False) -> logging.Logger:
    """按 LoggingConfig 配置根日志器: rich 输出到 stderr, 可选滚动文件"""
    global _configured
    config = config or LoggingConfig()
    logger = logging.getLogger(ROOT_LOGGER)
    if _configured:
        return logger

    level = logging.DEBUG if debug else getattr(logging, str(config.level).upper(), logging.WARNING)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    console_handler = RichHandler(
        console=Console(stderr=True),
        level=level,
        show_path=False,
        rich_tracebacks=True,
    )
    logger.addHandler(console_handler)

    if config.file:
        log_path = Path(config.file).expanduser()
        try:
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=int(config.max_size),
                backupCount=int(config.backup_count),
                encoding="utf-8",
            )
        except OSError:
            # 只读环境下仅保留控制台日志
            file_handler = None
        if file_handler is not None:
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(config.format))
            logger.addHandler(file_handler)

    _configured = True
    return logger


def get_logger(name: str) -> logging.Logger:
    """获取 n2verma 命名空间下的日志器"""
    if name.startswith("src."):
        name = name[len("src."):]
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
