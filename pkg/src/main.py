#!/usr/bin/env python3
"""
n2verma CLI - 主入口模块
N=2 超共形代数与 affine sl(2) Verma 型模的精确计算工具
"""

import sys

import click
from rich import print as rprint
from rich.console import Console
from rich.traceback import install

# 安装 rich 异常处理
install(show_locals=True)

# 全局控制台对象 (诊断信息走 stderr)
console = Console(stderr=True)

from .commands.algebra import algebra_check, flow
from .commands.config import config_group
from .commands.modules import basis, char, gram, norms
from .commands.singular import diagram, singular
from .commands.string import string_verify
from .commands.suite import suite
from .commands.theorems import equiv
from .core.config import init_config
from .core.exceptions import USAGE_ERRORS, ConfigurationError, N2VermaError
from .utils.logger import setup_logging
from . import __version__


@click.group(invoke_without_command=True)
@click.option('--version', is_flag=True, help='显示版本信息')
@click.option('--config-file', type=click.Path(), help='指定配置文件路径')
@click.option('--debug', is_flag=True, help='启用调试模式')
@click.pass_context
def cli(ctx, version, config_file, debug):
    """
    🧮 n2verma - N=2 与 affine sl(2) Verma 型模的精确计算

    奇异向量、谱流、模等价检验与玻色弦实现
    """
    # 确保上下文对象存在
    ctx.ensure_object(dict)

    # 存储全局配置
    ctx.obj['config_file'] = config_file
    ctx.obj['debug'] = debug

    if version:
        rprint(f"[bold blue]n2verma[/bold blue] v{__version__}")
        rprint("[dim]N=2 与 affine sl(2) Verma 型模的精确计算工具[/dim]")
        ctx.exit(0)

    try:
        config_manager = init_config(config_file)
    except ConfigurationError as e:
        console.print(f"[red]❌ 配置错误: {e}[/red]")
        ctx.exit(1)
    setup_logging(config_manager.config.logging, debug)

    if ctx.invoked_subcommand is None:
        # 显示欢迎信息和帮助
        if config_manager.config.display.show_welcome:
            show_welcome()
        click.echo(ctx.get_help())


def show_welcome():
    """显示欢迎信息"""
    rprint("""
[bold blue]
    ╔═══════════════════════════════════════╗
    ║            n2verma v{version}             ║
    ║   N=2 / sl(2) Verma 型模精确计算        ║
    ╚═══════════════════════════════════════╝
[/bold blue]

[yellow]🚀 快速开始:[/yellow]
  [dim]1.[/dim] [cyan]n2verma algebra-check[/cyan]                                   # 代数结构检验
  [dim]2.[/dim] [cyan]n2verma singular --module topological --h sym:h-minus:1:1[/cyan]  # 奇异向量
  [dim]3.[/dim] [cyan]n2verma equiv --module topological --h 1/3 --t 5/2[/cyan]         # 模等价检验
  [dim]4.[/dim] [cyan]n2verma string-verify --h 1/2 --t 3[/cyan]                      # 弦实现
  [dim]5.[/dim] [cyan]n2verma suite[/cyan]                                           # 验收套件

[yellow]📚 帮助:[/yellow]
  [cyan]n2verma --help[/cyan]                      # 显示帮助
  [cyan]n2verma <command> --help[/cyan]            # 显示命令帮助
""".format(version=__version__))


@cli.command()
def version():
    """📋 显示版本信息"""
    from .commands.system import show_version
    show_version()


# 注册命令
cli.add_command(algebra_check, name='algebra-check')
cli.add_command(basis, name='basis')
cli.add_command(gram, name='gram')
cli.add_command(norms, name='norms')
cli.add_command(singular, name='singular')
cli.add_command(flow, name='flow')
cli.add_command(diagram, name='diagram')
cli.add_command(char, name='char')
cli.add_command(equiv, name='equiv')
cli.add_command(string_verify, name='string-verify')
cli.add_command(suite, name='suite')
cli.add_command(config_group, name='config')


def handle_exception(exc_type, exc_value, exc_traceback):
    """全局异常处理"""
    if issubclass(exc_type, USAGE_ERRORS):
        console.print(f"[red]❌ 参数错误: {exc_value}[/red]")
        sys.exit(2)
    elif issubclass(exc_type, N2VermaError):
        console.print(f"[red]❌ 错误: {exc_value}[/red]")
    elif issubclass(exc_type, KeyboardInterrupt):
        console.print("\n[yellow]⚠️  操作已取消[/yellow]")
    else:
        console.print_exception()
    sys.exit(1)


# 设置全局异常处理
sys.excepthook = handle_exception


if __name__ == '__main__':
    cli()
