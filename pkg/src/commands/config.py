"""
配置管理命令
"""

from dataclasses import asdict

import click
from rich import print as rprint
from rich.console import Console
from rich.table import Table

from ..core.config import Config, get_config, init_config
from ..core.exceptions import ConfigurationError

console = Console()

SECTION_TITLES = {
    "truncation": "✂️  截断配置",
    "verify": "🧪 验证配置",
    "display": "🎨 显示配置",
    "logging": "📝 日志配置",
}


@click.group()
def config_group():
    """⚙️ 配置管理"""
    pass


@config_group.command()
@click.pass_context
def show(ctx):
    """显示当前配置"""
    try:
        config_manager = get_config()
    except ConfigurationError as e:
        rprint(f"[red]❌ 显示配置失败: {e}[/red]")
        ctx.exit(1)

    rprint("[blue]⚙️ 当前配置[/blue]")
    for name, section in config_manager.sections().items():
        table = Table(title=SECTION_TITLES.get(name, name), show_header=False)
        table.add_column("项目", style="cyan")
        table.add_column("值", style="white")
        for key, value in asdict(section).items():
            table.add_row(f"{name}.{key}", str(value))
        console.print(table)

    rprint(f"[dim]配置文件: {config_manager.config_file}[/dim]")


@config_group.command()
@click.argument('key')
@click.argument('value')
@click.pass_context
def set(ctx, key: str, value: str):
    """设置配置项"""
    try:
        config_manager = get_config()
        rprint(f"[blue]⚙️ 设置配置项 {key} = {value}[/blue]")
        config_manager.set(key, value)
    except ConfigurationError as e:
        rprint(f"[red]❌ 配置错误: {e}[/red]")
        rprint("[dim]示例: n2verma config set truncation.max_level 4[/dim]")
        ctx.exit(1)

    rprint("[green]✅ 配置项已更新[/green]")
    rprint(f"[dim]配置已保存到: {config_manager.config_file}[/dim]")


@config_group.command()
@click.argument('key')
@click.pass_context
def get(ctx, key: str):
    """获取配置项"""
    try:
        value = get_config().get(key)
    except ConfigurationError as e:
        rprint(f"[red]❌ 获取配置失败: {e}[/red]")
        ctx.exit(1)

    if value is None:
        rprint(f"[red]❌ 配置项 '{key}' 不存在[/red]")
        ctx.exit(1)

    rprint(f"[cyan]{key}[/cyan]: [white]{value}[/white]")


@config_group.command()
@click.option('--force', is_flag=True, help='覆盖已有配置文件')
@click.pass_context
def init(ctx, force: bool):
    """写出默认配置文件"""
    config_file = ctx.obj.get('config_file') if ctx.obj else None
    try:
        config_manager = init_config(config_file)
        if config_manager.config_file.exists() and not force:
            rprint(f"[yellow]⚠️  配置文件已存在: {config_manager.config_file} (使用 --force 覆盖)[/yellow]")
            return
        config_manager.config = Config()
        config_manager.save_config()
    except ConfigurationError as e:
        rprint(f"[red]❌ 初始化配置失败: {e}[/red]")
        ctx.exit(1)

    rprint(f"[green]✅ 已写出默认配置: {config_manager.config_file}[/green]")
