"""
系统命令
"""

import platform

import sympy
from rich.console import Console
from rich.panel import Panel

from ..core.config import get_config
from .. import __version__

console = Console()


def show_version():
    """显示版本信息"""
    config_file = get_config().config_file
    info = (
        f"[bold blue]n2verma[/bold blue] v{__version__}\n"
        f"[dim]N=2 与 affine sl(2) Verma 型模的精确计算[/dim]\n\n"
        f"Python  {platform.python_version()}\n"
        f"sympy   {sympy.__version__}\n"
        f"配置文件 {config_file}"
    )
    console.print(Panel(info, title="📋 版本信息", expand=False))
