"""
模等价检验命令: V⊗Ξ / U⊗Ξ 与扭曲 sl(2) 模之和的截断比较
"""

from typing import Optional

import click
from rich import print as rprint

from ..core.exceptions import USAGE_ERRORS, ModuleSpecError
from ..core.free_field import TensorProduct, check_sl2_closure, verify_decomposition
from ..core.modules import ModuleVariant
from ..models.reports import (
    DecompositionReport,
    HighestWeightEntry,
    MismatchEntry,
    MonomialTerm,
    OutputFormat,
    status_of,
)
from ..utils.logger import get_logger
from ..utils.output import (
    emit_json,
    finish,
    print_table,
    resolve_format,
    status_line,
    truncation_default,
    usage_error,
    verify_default,
)
from ..utils.parsing import build_spec, flags_from, module_options, parse_window

logger = get_logger(__name__)


@click.command("equiv")
@module_options
@click.option("--theta-window", help="扭曲窗口 LO:HI (缺省取配置 verify.theta_window)")
@click.option("--charge-window", help="sl(2) 荷窗口 LO:HI")
@click.option("--max-level", type=int, help="维数表的能级上限")
@click.option("--closure-level", type=int, default=1, show_default=True, help="sl(2) 闭合检验的能级上限 (0 跳过)")
@click.option("--closure-span", type=int, default=1, show_default=True, help="闭合检验的模指标范围")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def equiv(
    ctx,
    theta_window: Optional[str],
    charge_window: Optional[str],
    max_level: Optional[int],
    closure_level: int,
    closure_span: int,
    fmt: Optional[str],
    **kwargs,
):
    """🔗 检验 topological / massive 模与扭曲 sl(2) 模的等价"""
    try:
        output = resolve_format(fmt)
        spec = build_spec(flags_from(kwargs))
        if spec.variant not in (ModuleVariant.TOPOLOGICAL, ModuleVariant.MASSIVE):
            raise ModuleSpecError("equiv 只接受 topological 或 massive 模")
        if spec.theta != 0:
            raise ModuleSpecError("equiv 只接受未扭曲的模 (theta = 0)")
        reach = verify_default(None, "theta_window")
        thetas = parse_window(theta_window, (-reach, reach))
        charges = parse_window(charge_window, thetas)
        level = truncation_default(max_level, "max_level")
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    closure_failures = []
    if closure_level > 0:
        closure_failures = check_sl2_closure(TensorProduct(spec), max_level=closure_level, mode_span=closure_span)
    result = verify_decomposition(spec, thetas, level, charges)
    passed = result.passed and not closure_failures

    findings = [
        HighestWeightEntry(
            theta=f.theta,
            passed=f.passed,
            kernel_dimension=len(f.states),
            detail=f.detail,
            state=[MonomialTerm(**term) for term in f.states[0].to_json()] if f.states else [],
        )
        for f in result.hw_found
    ]
    mismatches = [MismatchEntry(key=list(k), difference=v) for k, v in sorted(result.mismatches.items())]

    if output is OutputFormat.JSON:
        emit_json(
            DecompositionReport(
                theorem=result.theorem.value,
                module=spec.describe(),
                theta_window=list(thetas),
                charge_window=list(charges),
                max_level=level,
                closure_failures=len(closure_failures),
                highest_weight=findings,
                mismatches=mismatches,
                dictionary=result.dictionary,
                status=status_of(passed),
            )
        )
    else:
        rprint(f"[blue]🔗 {result.theorem.value}: {spec.describe()}[/blue]")
        if closure_level > 0:
            status_line(not closure_failures, f"sl(2) 闭合 (能级 ≤ {closure_level}): {len(closure_failures)} 处失败")
            for failure in closure_failures[:3]:
                rprint(f"[dim]  [{failure.left}, {failure.right}] on {failure.state}[/dim]")
        rows = [
            [f.theta, f.kernel_dimension, "[green]✅[/green]" if f.passed else "[red]❌[/red]", f.detail]
            for f in findings
        ]
        print_table("最高权向量", ["θ", "核维数", "状态", "细节"], rows)
        status_line(not mismatches, f"维数表 (能级 ≤ {level}): {len(mismatches)} 处不符")
        for m in mismatches[:5]:
            rprint(f"[dim]  {tuple(m.key)}: {m.difference:+d}[/dim]")
        status_line(passed, "等价检验通过" if passed else "等价检验失败")
    finish(ctx, passed)
