"""
弦实现检验命令
"""

from typing import List, Optional

import click
from rich import print as rprint

from ..core.exceptions import USAGE_ERRORS
from ..core.modules import ConditionKind, HWCondition
from ..core.string_realization import (
    PseudomassiveLabel,
    alternate_dressing,
    check_n2_closure,
    check_string_hw,
    d_diagram,
    dress,
    dressing_dimension,
    dressing_momentum,
    ghost_picture_check,
    matches_label,
    reduction_table,
    string_space,
)
from ..models.reports import LabelReport, OutputFormat, StringCheckEntry, StringCheckReport, Status, status_of
from ..utils.output import emit_json, finish, print_table, resolve_format, usage_error
from ..utils.parsing import parse_scalar, parse_t, parse_window


def _label(label: PseudomassiveLabel, alpha: Optional[int] = None) -> LabelReport:
    return LabelReport(h=str(label.h), l=str(label.l), t=str(label.t), theta=label.theta, alpha=alpha)


@click.command("string-verify")
@click.option("--t", "t_text", default="symbolic", show_default=True, help="参数 t")
@click.option("--h", "h_text", required=True, help="缀饰参数 h")
@click.option("--delta", "delta_text", help="物质主场维数 Δ (缺省 Δ(h, t), 即拓扑情形)")
@click.option("--theta", type=int, default=0, show_default=True, help="鬼场 picture θ")
@click.option("--closure-level", type=int, default=1, show_default=True, help="N=2 闭合检验的能级上限 (0 跳过)")
@click.option("--closure-span", type=int, default=1, show_default=True, help="闭合检验的模指标范围")
@click.option("--alpha-window", default="-2:2", show_default=True, help="D 态极值图的 picture 窗口")
@click.option("--reduction-max", type=int, default=3, show_default=True, help="Virasoro 约化表的 r, s 上限")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def string_verify(
    ctx,
    t_text: str,
    h_text: str,
    delta_text: Optional[str],
    theta: int,
    closure_level: int,
    closure_span: int,
    alpha_window: str,
    reduction_max: int,
    fmt: Optional[str],
):
    """🧵 检验玻色弦实现: N=2 闭合、缀饰、鬼场 picture 与 D 态"""
    try:
        output = resolve_format(fmt)
        t = parse_t(t_text)
        h = parse_scalar(h_text, t)
        delta = parse_scalar(delta_text, t, {"h": h}) if delta_text else dressing_dimension(h, t)
        window = parse_window(alpha_window, (-2, 2))
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    checks: List[StringCheckEntry] = []

    if closure_level > 0:
        space = string_space(t, delta, dressing_momentum(h, t, theta), theta)
        failures = check_n2_closure(space, closure_level, closure_span)
        detail = f"{len(failures)} 处失败" + (f", 首个 [{failures[0].left},{failures[0].right}]" if failures else "")
        checks.append(StringCheckEntry(name="n2-closure", status=status_of(not failures), detail=detail))

    state, label = dress(delta, h, t, theta)
    checks.append(StringCheckEntry(name="dressing", status=status_of(matches_label(state, label)), label=_label(label)))

    if label.l.is_zero:
        topological = bool(check_string_hw(state, HWCondition(ConditionKind.TOPOLOGICAL, theta)))
        checks.append(StringCheckEntry(name="topological-effect", status=status_of(topological), detail="ℓ = 0"))

    other = alternate_dressing(h, t)
    same = dressing_dimension(other, t) == dressing_dimension(h, t)
    checks.append(StringCheckEntry(name="alternate-dressing", status=status_of(same), detail=f"h' = {other}"))

    bad_pictures = [a for a in range(window[0], window[1] + 1) if not ghost_picture_check(a)]
    checks.append(
        StringCheckEntry(name="ghost-pictures", status=status_of(not bad_pictures), detail=f"失败: {bad_pictures}" if bad_pictures else "")
    )

    graph = d_diagram(h, t, theta, window)
    unverified = [n.key for n in graph.nodes if n.extra.get("verified") != "true"]
    expected_edges = 2 * (len(graph.nodes) - 1)
    diagram_ok = not unverified and len(graph.edges) == expected_edges
    checks.append(
        StringCheckEntry(
            name="d-diagram",
            status=status_of(diagram_ok),
            detail=f"{len(graph.nodes)} 节点, {len(graph.edges)}/{expected_edges} 边" + (f", 未验证 {unverified}" if unverified else ""),
        )
    )

    rows = reduction_table(reduction_max, reduction_max, t)
    unequal = [f"{r.sign}({r.r},{r.s})" for r in rows if not r.equal]
    checks.append(
        StringCheckEntry(name="virasoro-reduction", status=status_of(not unequal), detail=f"{len(rows)} 行" + (f", 不符 {unequal}" if unequal else ""))
    )

    passed = all(c.status is Status.PASS for c in checks)
    if output is OutputFormat.JSON:
        emit_json(StringCheckReport(t=str(t), checks=checks, status=status_of(passed)))
    else:
        rprint(f"[blue]🧵 弦实现 t={t}, h={h}, Δ={delta}, θ={theta}[/blue]")
        table_rows = [
            [c.name, "[green]✅[/green]" if c.status is Status.PASS else "[red]❌[/red]", c.detail]
            for c in checks
        ]
        print_table("🧵 检验结果", ["检验", "状态", "细节"], table_rows)
        rprint(f"[dim]标签 {label}[/dim]")
    finish(ctx, passed)
