"""
命令行参数解析: 精确有理数、符号 t、轨迹简写与模定义
"""

import re
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import click

from ..core.exceptions import ParseError
from ..core.modules import ModuleSpec, ModuleVariant
from ..core.scalar import RatFun, to_rational
from ..core.singular import charged_l, charged_lambda, topological_h
from ..core.string_realization import dressing_dimension

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_SHORTHAND = re.compile(r"^sym:([a-z-]+)((?::[^:]+)*)$")


def parse_t(text: Optional[str]) -> RatFun:
    """--t: "symbolic" 或精确有理数或 t 的有理表达式"""
    if text is None or text.strip().lower() == "symbolic":
        return RatFun.t()
    return parse_rational_expr(text)


def parse_rational_expr(text: str) -> RatFun:
    if _RATIONAL.match(text):
        return RatFun(to_rational(text.replace(" ", "")))
    if re.fullmatch(r"[\d\s+\-*/().t^]+", text):
        return RatFun.from_expr(text.replace("^", "**"))
    raise ParseError(f"无效的有理数: {text!r}")


def _int_args(name: str, args: Tuple[str, ...], count: int) -> Tuple[int, ...]:
    if len(args) != count:
        raise ParseError(f"sym:{name} 需要 {count} 个整数参数")
    try:
        return tuple(int(a) for a in args)
    except ValueError:
        raise ParseError(f"sym:{name} 的参数必须是整数: {':'.join(args)}")


def parse_scalar(text: Optional[str], t: RatFun, context: Optional[Dict[str, RatFun]] = None) -> Optional[RatFun]:
    """解析标量参数, 支持轨迹简写

    sym:h-minus:r:s, sym:h-plus:r:s, sym:lambda-ch:p (需要 j), sym:l-ch:p (需要 h),
    sym:delta:h (缀饰维数 Δ(h, t))。
    """
    if text is None:
        return None
    context = context or {}
    match = _SHORTHAND.match(text.strip())
    if not match:
        return parse_rational_expr(text)
    name = match.group(1)
    args = tuple(a for a in match.group(2).split(":") if a)
    if name in ("h-minus", "h-plus"):
        r, s = _int_args(name, args, 2)
        return topological_h("-" if name == "h-minus" else "+", r, s, t)
    if name == "lambda-ch":
        (p,) = _int_args(name, args, 1)
        if "j" not in context:
            raise ParseError("sym:lambda-ch 需要同时给出 --j")
        return charged_lambda(p, context["j"])
    if name == "l-ch":
        (p,) = _int_args(name, args, 1)
        if "h" not in context:
            raise ParseError("sym:l-ch 需要同时给出 --h")
        return charged_l(p, context["h"], t)
    if name == "delta":
        if len(args) != 1:
            raise ParseError("sym:delta 需要一个参数 h")
        return dressing_dimension(parse_scalar(args[0], t, context), t)  # type: ignore[arg-type]
    raise ParseError(f"未知的简写: sym:{name}")


def parse_window(text: Optional[str], default: Tuple[int, int]) -> Tuple[int, int]:
    """"LO:HI" 形式的整数窗口"""
    if text is None:
        return default
    match = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not match:
        raise ParseError(f"窗口格式应为 LO:HI: {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise ParseError(f"窗口下界大于上界: {text!r}")
    return lo, hi


@dataclass
class ModuleFlags:
    """模定义相关的命令行参数"""
    module: Optional[str] = None
    t: Optional[str] = None
    h: Optional[str] = None
    l: Optional[str] = None
    j: Optional[str] = None
    Lambda: Optional[str] = None
    k: Optional[str] = None
    theta: int = 0
    delta: Optional[str] = None
    c: Optional[str] = None


def _require(value: Optional[RatFun], flag: str, variant: str) -> RatFun:
    if value is None:
        raise ParseError(f"{variant} 模需要 --{flag}")
    return value


def build_spec(flags: ModuleFlags) -> ModuleSpec:
    """由命令行参数构造 ModuleSpec; sl(2) 模的 k 缺省为 t − 2"""
    if flags.module is None:
        raise ParseError("需要 --module")
    try:
        variant = ModuleVariant(flags.module)
    except ValueError:
        raise ParseError(f"未知的模类型: {flags.module}")
    t = parse_t(flags.t)
    name = variant.value
    if variant in (ModuleVariant.TOPOLOGICAL, ModuleVariant.MASSIVE):
        h = _require(parse_scalar(flags.h, t), "h", name)
        if variant is ModuleVariant.TOPOLOGICAL:
            return ModuleSpec.topological(h, t, flags.theta)
        l = _require(parse_scalar(flags.l, t, {"h": h}), "l", name)
        return ModuleSpec.massive(h, l, t, flags.theta)
    if variant in (ModuleVariant.SL2_VERMA, ModuleVariant.RELAXED):
        j = _require(parse_scalar(flags.j, t), "j", name)
        k = parse_scalar(flags.k, t) if flags.k is not None else t - 2
        if variant is ModuleVariant.SL2_VERMA:
            return ModuleSpec.sl2_verma(j, k, flags.theta)  # type: ignore[arg-type]
        lam = _require(parse_scalar(flags.Lambda, t, {"j": j}), "Lambda", name)
        return ModuleSpec.relaxed(j, lam, k, flags.theta)  # type: ignore[arg-type]
    if variant is ModuleVariant.VIRASORO:
        delta = _require(parse_scalar(flags.delta, t), "delta", name)
        c = parse_scalar(flags.c, t) if flags.c is not None else 13 - 6 / t - 6 * t
        return ModuleSpec.virasoro(delta, c)  # type: ignore[arg-type]
    if variant is ModuleVariant.GHOST:
        return ModuleSpec.ghost(flags.theta)
    momentum = _require(parse_scalar(flags.h, t), "h", name)
    return ModuleSpec.fock(RatFun(-1), momentum)


MODULE_CHOICES = [v.value for v in ModuleVariant]


def module_options(func):  # type: ignore[no-untyped-def]
    """给命令加上全部模定义参数"""
    options = [
        click.option("--module", "module", type=click.Choice(MODULE_CHOICES), help="模类型"),
        click.option("--t", "t", default="symbolic", show_default=True, help="参数 t (有理数或 symbolic)"),
        click.option("--h", "h", help="H0 本征值 h (或 Fock 模的动量)"),
        click.option("--l", "l", help="massive 模的 ℓ"),
        click.option("--j", "j", help="sl(2) 自旋 j"),
        click.option("--Lambda", "Lambda", help="relaxed 模的 Λ"),
        click.option("--k", "k", help="sl(2) 水平 k (缺省 t−2)"),
        click.option("--theta", "theta", type=int, default=0, show_default=True, help="谱流扭曲 θ"),
        click.option("--delta", "delta", help="Virasoro 最高权 Δ"),
        click.option("--c", "c", help="Virasoro 中心荷 (缺省 13 − 6/t − 6t)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def flags_from(kwargs: Dict[str, object]) -> ModuleFlags:
    names = ("module", "t", "h", "l", "j", "Lambda", "k", "theta", "delta", "c")
    return ModuleFlags(**{n: kwargs.pop(n) for n in names})  # type: ignore[arg-type]
