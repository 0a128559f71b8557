"""
模命令: PBW 基、Gram 矩阵、极值态模方与特征标
"""

from typing import Optional

import click
from rich import print as rprint

from ..core.algebra import word_text
from ..core.characters import character
from ..core.exceptions import USAGE_ERRORS
from ..core.linalg import rank
from ..core.modules import Bigrade, ModuleSpec, build_basis, gram_matrix, relaxed_extremal_norm
from ..models.reports import (
    BasisReport,
    BigradeModel,
    CharacterEntry,
    CharacterReport,
    GramReport,
    NormReport,
    OutputFormat,
)
from ..utils.output import (
    emit_json,
    emit_raw,
    finish,
    plain_matrix,
    print_table,
    resolve_format,
    status_line,
    truncation_default,
    usage_error,
)
from ..utils.parsing import build_spec, flags_from, module_options, parse_scalar, parse_t, parse_window


def _word_label(word) -> str:
    return f"{word_text(word)} v" if word else "v"


def _window(text: Optional[str]) -> tuple:
    reach = truncation_default(None, "charge_window")
    return parse_window(text, (-reach, reach))


@click.command("basis")
@module_options
@click.option("--charge", type=int, default=0, show_default=True, help="荷")
@click.option("--level", type=int, default=0, show_default=True, help="(扭曲) 能级")
@click.option("--max-level", type=int, help="截断能级 (缺省取配置)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def basis(ctx, charge: int, level: int, max_level: Optional[int], fmt: Optional[str], **kwargs):
    """📐 列出一个双分次分量的 PBW 基"""
    try:
        output = resolve_format(fmt)
        spec = build_spec(flags_from(kwargs))
        bigrade = Bigrade(charge, level)
        words = build_basis(spec, bigrade, truncation_default(max_level, "max_level"))
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    labels = [_word_label(w) for w in words]
    if output is OutputFormat.JSON:
        emit_json(
            BasisReport(
                module=spec.variant.value,
                parameters=spec.parameters(),
                bigrade=BigradeModel(charge=charge, level=level),
                dimension=len(words),
                basis=labels,
            )
        )
        return
    rprint(f"[blue]📐 {spec.describe()} 在 {bigrade} 的基 (维数 {len(words)})[/blue]")
    for label in labels:
        click.echo(f"  {label}")


@click.command("gram")
@module_options
@click.option("--charge", type=int, default=0, show_default=True, help="荷")
@click.option("--level", type=int, default=0, show_default=True, help="能级")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def gram(ctx, charge: int, level: int, fmt: Optional[str], **kwargs):
    """🔢 sl(2) Verma / relaxed 模的反变形式矩阵"""
    try:
        output = resolve_format(fmt)
        spec = build_spec(flags_from(kwargs))
        matrix = gram_matrix(spec, Bigrade(charge, level))
        matrix_rank = rank(matrix.entries, len(matrix.basis))
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    labels = [_word_label(w) for w in matrix.basis]
    cells = [[str(c) for c in row] for row in matrix.entries]
    symmetric = matrix.is_symmetric()
    if output is OutputFormat.JSON:
        emit_json(
            GramReport(
                module=spec.variant.value,
                bigrade=BigradeModel(charge=charge, level=level),
                basis=labels,
                matrix=cells,
                symmetric=symmetric,
                rank=matrix_rank,
            )
        )
    else:
        rprint(f"[blue]🔢 {spec.describe()} 在 {matrix.bigrade} 的 Gram 矩阵[/blue]")
        click.echo(plain_matrix([[label] + row for label, row in zip(labels, cells)], [""] + labels))
        rprint(f"[dim]秩 {matrix_rank} / {len(labels)}[/dim]")
        status_line(symmetric, "对称" if symmetric else "不对称")
    finish(ctx, symmetric)


@click.command("norms")
@click.option("--j", "j_text", required=True, help="自旋 j")
@click.option("--Lambda", "lam_text", required=True, help="Λ")
@click.option("--n", type=int, required=True, help="极值态编号 n")
@click.option("--k", "k_text", help="水平 k (缺省 t−2, t 为符号)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def norms(ctx, j_text: str, lam_text: str, n: int, k_text: Optional[str], fmt: Optional[str]):
    """📏 relaxed 模极值态 |n⟩ 的模方 (闭式并与 Gram 矩阵核对)"""
    try:
        output = resolve_format(fmt)
        t = parse_t(None)
        j = parse_scalar(j_text, t)
        lam = parse_scalar(lam_text, t, {"j": j})
        k = parse_scalar(k_text, t) if k_text else t - 2
        norm = relaxed_extremal_norm(j, lam, n)
        computed = gram_matrix(ModuleSpec.relaxed(j, lam, k), Bigrade(n, 0)).entries[0][0]
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    agrees = computed == norm
    if output is OutputFormat.JSON:
        emit_json(NormReport(j=str(j), Lambda=str(lam), n=n, norm=str(norm)))
    else:
        click.echo(str(norm))
    if not agrees:
        rprint(f"[red]❌ Gram 矩阵给出 {computed}, 与闭式不符[/red]")
    finish(ctx, agrees)


@click.command("char")
@module_options
@click.option("--max-level", type=int, help="能级上限 (缺省取配置)")
@click.option("--charge-window", help="荷窗口 LO:HI")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), help="输出格式")
@click.pass_context
def char(ctx, max_level: Optional[int], charge_window: Optional[str], fmt: Optional[str], **kwargs):
    """📊 截断特征标 (荷 × 能级的维数表)"""
    try:
        output = resolve_format(fmt, (OutputFormat.TEXT, OutputFormat.JSON, OutputFormat.CSV))
        spec = build_spec(flags_from(kwargs))
        window = _window(charge_window)
        series = character(spec, window, truncation_default(max_level, "max_level"))
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    if output is OutputFormat.JSON:
        emit_json(
            CharacterReport(
                module=spec.variant.value,
                gradings=list(series.gradings),
                bounds={name: list(series.bounds[name]) for name in series.gradings},
                entries=[CharacterEntry(key=list(key), dim=series.dim(*key)) for key in series.keys()],
            )
        )
    elif output is OutputFormat.CSV:
        emit_raw(series.to_csv())
    else:
        lo, hi = series.bounds["charge"]
        charges = list(range(lo, hi + 1))
        top = series.bounds["level"][1]
        rows = [[level] + [series.dim(q, level) for q in charges] for level in range(top + 1)]
        print_table(f"📊 {spec.describe()}", ["能级"] + [str(q) for q in charges], rows)
