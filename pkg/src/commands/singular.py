"""
奇异向量与极值图命令
"""

from typing import List, Optional

import click
from rich import print as rprint

from ..core.diagrams import DiagramGraph, extremal_diagram
from ..core.exceptions import USAGE_ERRORS
from ..core.singular import SingularVector, construct_charged, detect_singular
from ..core.string_realization import d_diagram
from ..models.reports import (
    BigradeModel,
    DiagramReport,
    MonomialTerm,
    OutputFormat,
    SingularVectorEntry,
    SingularVectorReport,
)
from ..utils.output import (
    emit_json,
    emit_raw,
    finish,
    print_table,
    resolve_format,
    status_line,
    truncation_default,
    usage_error,
)
from ..utils.parsing import build_spec, flags_from, module_options, parse_scalar, parse_t, parse_window


def _entry(vector: SingularVector) -> SingularVectorEntry:
    return SingularVectorEntry(
        kind=vector.kind.value,
        bigrade=BigradeModel(charge=vector.bigrade.charge, level=vector.bigrade.level),
        theta=vector.theta,
        condition=str(vector.condition),
        verified=vector.verified,
        kernel_dimension=vector.kernel_dimension,
        state=[MonomialTerm(**term) for term in vector.state.to_json()],
        labels={k: str(v) for k, v in vector.labels.items()},
    )


@click.command("singular")
@module_options
@click.option("--max-level", type=int, help="搜索的能级上限 (缺省取配置)")
@click.option("--min-level", type=int, default=0, show_default=True, help="搜索的能级下限")
@click.option("--charged", "charged_p", type=int, help="relaxed 模: 直接构造 Λ = Λ_ch(p, j) 的带荷奇异向量")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def singular(ctx, max_level: Optional[int], min_level: int, charged_p: Optional[int], fmt: Optional[str], **kwargs):
    """🎯 检测并检验奇异向量"""
    try:
        output = resolve_format(fmt)
        flags = flags_from(kwargs)
        if charged_p is not None:
            t = parse_t(flags.t)
            j = parse_scalar(flags.j, t)
            if j is None:
                raise click.UsageError("--charged 需要 --j")
            k = parse_scalar(flags.k, t) if flags.k else t - 2
            vectors: List[SingularVector] = [construct_charged(charged_p, j, k)]
            module_name = "relaxed"
            level = vectors[0].bigrade.level if vectors[0].bigrade else 0
        else:
            spec = build_spec(flags)
            level = truncation_default(max_level, "max_level")
            vectors = detect_singular(spec, level, min_level=min_level)
            module_name = spec.variant.value
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    passed = all(v.verified for v in vectors)
    if output is OutputFormat.JSON:
        emit_json(SingularVectorReport(module=module_name, max_level=level, vectors=[_entry(v) for v in vectors]))
    else:
        if not vectors:
            rprint(f"[yellow]⚠️  能级 ≤ {level} 内没有奇异向量[/yellow]")
        for v in vectors:
            status_line(v.verified, f"{v.kind.value} {v.bigrade} {v.condition} (核维数 {v.kernel_dimension})")
            click.echo(f"    {v.state}")
    finish(ctx, passed)


def _emit_diagram(graph: DiagramGraph, output: OutputFormat) -> None:
    if output is OutputFormat.DOT:
        emit_raw(graph.to_dot())
        return
    data = graph.to_json()
    if output is OutputFormat.JSON:
        emit_json(DiagramReport(name=graph.name, nodes=data["nodes"], edges=data["edges"]))  # type: ignore[arg-type]
        return
    rows = [[n.key, n.charge, n.level, ", ".join(n.conditions), n.flag or ""] for n in graph.nodes]
    print_table(f"🕸️  {graph.name}", ["节点", "荷", "能级", "条件", "尖点"], rows)
    for e in graph.edges:
        click.echo(f"  {e.source} --{e.mode}--> {e.target}")


@click.command("diagram")
@module_options
@click.option("--charge-window", help="荷窗口 LO:HI")
@click.option("--max-level", type=int, help="能级上限")
@click.option("--dressed", is_flag=True, help="弦实现中的缀饰态极值图 (用 --h --t --theta)")
@click.option("--alpha-window", default="-2:2", show_default=True, help="缀饰态鬼场图像窗口 LO:HI")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]), help="输出格式")
@click.pass_context
def diagram(
    ctx,
    charge_window: Optional[str],
    max_level: Optional[int],
    dressed: bool,
    alpha_window: str,
    fmt: Optional[str],
    **kwargs,
):
    """🕸️  极值图 (DOT / JSON)"""
    try:
        output = resolve_format(fmt, (OutputFormat.TEXT, OutputFormat.JSON, OutputFormat.DOT))
        flags = flags_from(kwargs)
        if dressed:
            t = parse_t(flags.t)
            h = parse_scalar(flags.h, t)
            if h is None:
                raise click.UsageError("--dressed 需要 --h")
            graph = d_diagram(h, t, flags.theta, parse_window(alpha_window, (-2, 2)))
            verified = all(n.extra.get("verified") == "true" for n in graph.nodes)
        else:
            spec = build_spec(flags)
            reach = truncation_default(None, "charge_window")
            window = parse_window(charge_window, (-reach, reach))
            graph = extremal_diagram(spec, window, max_level)
            verified = True
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    _emit_diagram(graph, output)
    finish(ctx, verified)
