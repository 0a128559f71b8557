"""
验收套件命令
"""

from dataclasses import replace
from typing import Optional, Tuple

import click
from rich.console import Console

from ..core.acceptance import CRITERIA, SuiteResult, run_criterion, scale_by_name, summary_counts
from ..models.reports import CriterionEntry, OutputFormat, SuiteReport, status_of
from ..utils.output import (
    emit_json,
    finish,
    print_table,
    resolve_format,
    status_line,
    truncation_default,
    verify_default,
)

progress_console = Console(stderr=True)


@click.command("suite")
@click.option("--scale", type=click.Choice(["quick", "full"]), default="quick", show_default=True, help="检验规模")
@click.option("--seed", type=int, help="随机种子 (缺省取配置 verify.seed)")
@click.option("--only", type=int, multiple=True, help="只运行指定编号 (可重复)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def suite(ctx, scale: str, seed: Optional[int], only: Tuple[int, ...], fmt: Optional[str]):
    """🧪 运行全部验收检验并汇总"""
    output = resolve_format(fmt)
    seed = verify_default(seed, "seed")
    known = [number for number, _, _ in CRITERIA]
    unknown = [n for n in only if n not in known]
    if unknown:
        raise click.BadParameter(f"未知的检验编号: {unknown}", param_hint="--only")

    chosen = replace(
        scale_by_name(scale),
        classify_horizon=truncation_default(None, "classify_horizon"),
        escape_depth=truncation_default(None, "escape_depth"),
    )
    result = SuiteResult(chosen.name, seed)
    for number, name, _ in CRITERIA:
        if only and number not in only:
            continue
        with progress_console.status(f"[cyan]🧪 {number}. {name}...[/cyan]"):
            result.outcomes.append(run_criterion(number, chosen, seed))

    counts = summary_counts(result)
    if output is OutputFormat.JSON:
        emit_json(
            SuiteReport(
                scale=result.scale,
                seed=seed,
                criteria=[
                    CriterionEntry(number=o.number, name=o.name, status=status_of(o.passed), checks=o.checks, detail=o.detail)
                    for o in result.outcomes
                ],
                passed=counts["passed"],
                failed=counts["failed"],
                status=status_of(result.passed),
            )
        )
    else:
        rows = [
            [o.number, o.name, "[green]✅[/green]" if o.passed else "[red]❌[/red]", o.checks, f"{o.elapsed:.2f}s", o.detail]
            for o in result.outcomes
        ]
        print_table(f"🧪 验收套件 ({result.scale}, 种子 {seed})", ["#", "检验", "状态", "次数", "耗时", "细节"], rows)
        status_line(result.passed, f"{counts['passed']} 通过, {counts['failed']} 失败")
    finish(ctx, result.passed)
