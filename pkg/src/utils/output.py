"""
输出工具: 文本走 rich, JSON/DOT/CSV 走 click.echo 以保证字节可复现
"""

from typing import Any, List, NoReturn, Optional, Sequence

import click
from rich import print as rprint
from rich.console import Console
from rich.table import Table
from tabulate import tabulate

from ..core.config import get_config
from ..core.exceptions import N2VermaError, PoleError
from ..models.reports import OutputFormat, Report

console = Console()
error_console = Console(stderr=True)

EXIT_FAILED = 1
EXIT_USAGE = 2


def resolve_format(fmt: Optional[str], allowed: Sequence[OutputFormat] = (OutputFormat.TEXT, OutputFormat.JSON)) -> OutputFormat:
    """--format 缺省时取配置 display.format; 命令不支持的格式视为用法错误"""
    chosen = OutputFormat(fmt or get_config().get("display.format", "text"))
    if chosen not in allowed:
        names = ", ".join(f.value for f in allowed)
        raise click.UsageError(f"此命令支持的格式: {names}")
    return chosen


def truncation_default(value: Optional[int], key: str) -> int:
    return value if value is not None else int(get_config().get(f"truncation.{key}"))


def verify_default(value: Optional[int], key: str) -> int:
    return value if value is not None else int(get_config().get(f"verify.{key}"))


def emit_json(report: Report) -> None:
    click.echo(report.to_json())


def emit_raw(text: str) -> None:
    click.echo(text, nl=not text.endswith("\n"))


def status_line(passed: bool, message: str) -> None:
    if passed:
        rprint(f"[green]✅ {message}[/green]")
    else:
        rprint(f"[red]❌ {message}[/red]")


def rich_table(title: str, headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> Table:
    table = Table(title=title)
    for i, name in enumerate(headers):
        table.add_column(name, style="cyan" if i == 0 else "white")
    for row in rows:
        table.add_row(*(str(cell) for cell in row))
    return table


def print_table(title: str, headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    console.print(rich_table(title, headers, rows))


def plain_matrix(rows: List[List[str]], headers: Sequence[str]) -> str:
    """矩阵按配置的 table_style 排版"""
    style = get_config().get("display.table_style", "simple")
    return tabulate(rows, headers=list(headers), tablefmt=style, disable_numparse=True)


def usage_error(ctx: click.Context, error: N2VermaError) -> NoReturn:
    """用法错误: 单行红色诊断, 退出码 2"""
    message = str(error)
    if isinstance(error, PoleError) and error.denominator:
        message = f"{message} (分母 {error.denominator})"
    error_console.print(f"[red]❌ 参数错误: {message}[/red]")
    ctx.exit(EXIT_USAGE)
    raise AssertionError("unreachable")


def finish(ctx: click.Context, passed: bool) -> None:
    """检验类命令按结果设置退出码"""
    if not passed:
        ctx.exit(EXIT_FAILED)
