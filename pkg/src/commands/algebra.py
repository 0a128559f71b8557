"""
代数结构命令: 结构检验与谱流
"""

import random
from typing import Optional

import click
from rich import print as rprint

from ..core.algebra import (
    AlgebraFamily,
    ModePolynomial,
    check_structure,
    default_algebra,
    parse_mode,
    spectral_flow,
)
from ..core.exceptions import USAGE_ERRORS, ParseError
from ..models.reports import FlowReport, OutputFormat, StructureReport
from ..utils.logger import get_logger
from ..utils.output import (
    emit_json,
    finish,
    print_table,
    resolve_format,
    status_line,
    usage_error,
    verify_default,
)
from ..utils.parsing import parse_t

logger = get_logger(__name__)

ALGEBRAS = {
    "n2": AlgebraFamily.N2,
    "sl2": AlgebraFamily.SL2,
    "virasoro": AlgebraFamily.VIRASORO,
    "ghost": AlgebraFamily.GHOST,
    "scalar": AlgebraFamily.SCALAR,
}

FLOW_ALGEBRAS = ("n2", "sl2")


@click.command("algebra-check")
@click.option("--algebra", "name", type=click.Choice(list(ALGEBRAS) + ["all"]), default="all", show_default=True, help="代数")
@click.option("--t", "t_text", default="symbolic", show_default=True, help="参数 t")
@click.option("--samples", type=int, help="随机三元组个数 (缺省取配置 verify.samples)")
@click.option("--flow-window", type=int, default=3, show_default=True, help="谱流检验的 |θ| 上限")
@click.option("--seed", type=int, help="随机种子 (缺省取配置 verify.seed)")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def algebra_check(ctx, name: str, t_text: str, samples: Optional[int], flow_window: int, seed: Optional[int], fmt: Optional[str]):
    """🧮 检验分次反对称、Jacobi 恒等式与谱流自同构"""
    try:
        output = resolve_format(fmt)
        t = parse_t(t_text)
        samples = verify_default(samples, "samples")
        seed = verify_default(seed, "seed")
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    families = list(ALGEBRAS.values()) if name == "all" else [ALGEBRAS[name]]
    reports = []
    for family in families:
        rng = random.Random(f"{seed}:{family.value}")
        result = check_structure(default_algebra(family, t), rng, samples, flow_window)
        logger.info(f"{family.value}: {samples} 组样本, {'通过' if result.passed else '失败'}")
        reports.append(
            StructureReport(
                algebra=family.value,
                samples=samples,
                seed=seed,
                antisymmetry_failures=len(result.antisymmetry_failures),
                jacobi_failures=len(result.jacobi_failures),
                flow_failures=len(result.flow_failures),
                witnesses=result.witnesses(limit=5),
                passed=result.passed,
            )
        )

    if output is OutputFormat.JSON:
        for report in reports:
            emit_json(report)
    else:
        rows = [
            [r.algebra, r.samples, r.antisymmetry_failures, r.jacobi_failures, r.flow_failures,
             "[green]✅[/green]" if r.passed else "[red]❌[/red]"]
            for r in reports
        ]
        print_table("🧮 代数结构检验", ["代数", "样本", "反对称", "Jacobi", "谱流", "状态"], rows)
        for r in reports:
            for witness in r.witnesses:
                rprint(f"[dim]  {r.algebra}: {witness}[/dim]")
        status_line(all(r.passed for r in reports), f"种子 {seed}")
    finish(ctx, all(r.passed for r in reports))


@click.command("flow")
@click.option("--algebra", "name", type=click.Choice(FLOW_ALGEBRAS), required=True, help="代数")
@click.option("--theta", type=int, required=True, help="谱流参数 θ")
@click.option("--mode", "mode_text", required=True, help='模, 例如 "H0", "G-1", "J+_1"')
@click.option("--t", "t_text", default="symbolic", show_default=True, help="参数 t")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), help="输出格式")
@click.pass_context
def flow(ctx, name: str, theta: int, mode_text: str, t_text: str, fmt: Optional[str]):
    """🔁 计算 U_θ 作用于一个模的像"""
    try:
        output = resolve_format(fmt)
        family = ALGEBRAS[name]
        algebra = default_algebra(family, parse_t(t_text))
        m = parse_mode(mode_text)
        if m.algebra is not family:
            raise ParseError(f"模 {mode_text} 不属于 {family.value}")
        image = spectral_flow(family, theta, ModePolynomial.of(m), algebra)
    except USAGE_ERRORS as e:
        usage_error(ctx, e)

    if output is OutputFormat.JSON:
        emit_json(FlowReport(algebra=family.value, theta=theta, mode=str(m), image=str(image)))
    else:
        click.echo(str(image))
