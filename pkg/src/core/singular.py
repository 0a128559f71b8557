"""
奇异向量: 闭式轨迹与位置, 以及通过湮灭算子核的精确检测
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .exceptions import ModuleSpecError, TruncationError
from .modules import (
    Bigrade,
    ConditionKind,
    HWCondition,
    ModuleSpec,
    ModuleVariant,
    StateVector,
    annihilation_kernel,
    build_module,
    check_hw,
)
from .scalar import ONE, RatFun
from ..utils.logger import get_logger

logger = get_logger(__name__)


class SingularKind(str, Enum):
    CHARGED = "charged"
    TOPOLOGICAL = "topological"
    SL2_VERMA = "sl2-verma"
    MASSIVE = "massive"
    RELAXED = "relaxed"
    VIRASORO = "virasoro"


_KIND_BY_CONDITION = {
    ConditionKind.TOPOLOGICAL: SingularKind.TOPOLOGICAL,
    ConditionKind.SL2_VERMA: SingularKind.SL2_VERMA,
    ConditionKind.MASSIVE: SingularKind.MASSIVE,
    ConditionKind.RELAXED: SingularKind.RELAXED,
    ConditionKind.VIRASORO: SingularKind.VIRASORO,
}

# massive / relaxed 模里满足这些条件的向量是带荷奇异向量
_CHARGED_HOSTS = {
    ModuleVariant.MASSIVE: ConditionKind.TOPOLOGICAL,
    ModuleVariant.RELAXED: ConditionKind.SL2_VERMA,
}

_SEARCHED = {
    ModuleVariant.TOPOLOGICAL,
    ModuleVariant.SL2_VERMA,
    ModuleVariant.MASSIVE,
    ModuleVariant.RELAXED,
    ModuleVariant.VIRASORO,
}


@dataclass
class SingularVector:
    """一个已检验的奇异向量"""
    kind: SingularKind
    bigrade: Bigrade
    condition: HWCondition
    state: StateVector
    verified: bool
    kernel_dimension: int = 1
    labels: Dict[str, object] = field(default_factory=dict)

    @property
    def theta(self) -> int:
        return self.condition.theta


def charged_lambda(p: int, j: RatFun) -> RatFun:
    """Λ_ch(p, j) = p(p+1) + 2pj"""
    return p * (p + 1) + 2 * p * j


def charged_l(p: int, h: RatFun, t: RatFun) -> RatFun:
    """massive 模的带荷轨迹 ℓ_ch = p(p+1)/t − p h"""
    return RatFun(p * (p + 1)) / t - p * h


def charged_state(spec: ModuleSpec, p: int) -> StateVector:
    module = build_module(spec)
    if p <= -1:
        word = (module.algebra.mode("J-", 0),) * (-p)
    else:
        word = (module.algebra.mode("J+", 0),) * (p + 1)
    return StateVector(module, {word: ONE})


def construct_charged(p: int, j: RatFun, k: RatFun) -> SingularVector:
    """Λ = Λ_ch(p, j) 处 relaxed 模中的零模方态"""
    spec = ModuleSpec.relaxed(j, charged_lambda(p, j), k)
    state = charged_state(spec, p)
    condition = HWCondition(ConditionKind.SL2_VERMA, 0 if p <= -1 else 1)
    verified = check_hw(state, condition).passed
    logger.debug(f"charged p={p}: {state} {condition} -> {verified}")
    return SingularVector(
        kind=SingularKind.CHARGED,
        bigrade=state.bigrade,
        condition=condition,
        state=state,
        verified=verified,
        labels={"p": p},
    )


def topological_h(sign: str, r: int, s: int, t: RatFun) -> RatFun:
    """拓扑奇异向量轨迹 h^∓(r, s, t)"""
    if r < 1 or s < 1:
        raise ModuleSpecError(f"r, s 必须为正整数: r={r}, s={s}")
    if sign == "-":
        return RatFun(r + 1) / t - s
    if sign == "+":
        return RatFun(s - 1) - RatFun(r - 1) / t
    raise ModuleSpecError(f"符号必须为 + 或 -: {sign!r}")


def topological_position(sign: str, r: int, s: int) -> Tuple[int, int, int]:
    """(荷位移, 能级位移, 扭曲 θ)"""
    if r < 1 or s < 1:
        raise ModuleSpecError(f"r, s 必须为正整数: r={r}, s={s}")
    doubled = r * (r + 2 * s - 1)
    assert doubled % 2 == 0
    direction = 1 if sign == "+" else -1
    return direction * r, doubled // 2, -direction * r


def kac_dimension(r: int, s: int, t: RatFun) -> RatFun:
    """Virasoro Kac 维数 Δ_{r,s}(t) = ((r − st)² − (1 − t)²)/(4t)"""
    return ((r - s * t) ** 2 - (1 - t) ** 2) / (4 * t)


def massive_level_one_l(h: RatFun, t: RatFun) -> RatFun:
    """massive 模在 (0, 1) 处出现无荷奇异向量的轨迹 ℓ = (1 − h)(t(h + 1) − 2)/4"""
    return (1 - h) * (t * (h + 1) - 2) / 4


def relaxed_level_one_lambda(j: RatFun, k: RatFun) -> RatFun:
    """relaxed 模在 (0, 1) 处出现 relaxed 奇异向量的轨迹 Λ = −(2j − k)(2j + k + 2)/4"""
    return -(2 * j - k) * (2 * j + k + 2) / 4


def search_conditions(spec: ModuleSpec, bigrade: Bigrade) -> List[HWCondition]:
    """某双分次分量上搜索奇异向量用的条件集, 带荷条件在前"""
    q, theta = bigrade.charge, spec.theta
    variant = spec.variant
    if variant is ModuleVariant.TOPOLOGICAL:
        return [HWCondition(ConditionKind.TOPOLOGICAL, theta - q)]
    if variant is ModuleVariant.SL2_VERMA:
        return [HWCondition(ConditionKind.SL2_VERMA, theta)]
    if variant is ModuleVariant.RELAXED:
        conditions = [HWCondition(ConditionKind.SL2_VERMA, theta if q <= 0 else theta + 1)]
        if q == 0:
            conditions.append(HWCondition(ConditionKind.RELAXED, theta))
        return conditions
    if variant is ModuleVariant.MASSIVE:
        conditions = []
        if q != 0:
            conditions.append(HWCondition(ConditionKind.TOPOLOGICAL, theta - q if q > 0 else theta - q - 1))
        conditions.append(HWCondition(ConditionKind.MASSIVE, theta))
        return conditions
    if variant is ModuleVariant.VIRASORO:
        return [HWCondition(ConditionKind.VIRASORO)]
    raise ModuleSpecError(f"{variant.value} 模不支持奇异向量检测")


def singular_kind(variant: ModuleVariant, condition: HWCondition) -> SingularKind:
    if _CHARGED_HOSTS.get(variant) is condition.kind:
        return SingularKind.CHARGED
    return _KIND_BY_CONDITION[condition.kind]


def candidate_bigrades(spec: ModuleSpec, max_level: int, min_level: int = 0) -> List[Bigrade]:
    """能级 ≤ max_level 的非空分量 (不含最高权向量本身)"""
    module = build_module(spec)
    grades = []
    for level in range(min_level, max_level + 1):
        for charge in range(-level - 1, level + 2):
            g = Bigrade(charge, level)
            if (charge, level) != (0, 0) and module.basis(g):
                grades.append(g)
    return grades


def detect_singular(
    spec: ModuleSpec,
    max_level: int,
    truncation: Optional[int] = None,
    min_level: int = 0,
) -> List[SingularVector]:
    """逐个双分次分量解湮灭算子核, 返回全部奇异向量

    同一分量上先解带荷条件; 较弱条件的核里已满足带荷条件的态不再重复报告。
    """
    if truncation is not None and max_level > truncation:
        raise TruncationError(f"能级 {max_level} 超出截断 {truncation}")
    if spec.variant not in _SEARCHED:
        raise ModuleSpecError(f"{spec.variant.value} 模不支持奇异向量检测")
    module = build_module(spec)
    found: List[SingularVector] = []
    for g in candidate_bigrades(spec, max_level, min_level):
        stronger: List[HWCondition] = []
        for condition in search_conditions(spec, g):
            states = annihilation_kernel(module, g, condition)
            fresh = [s for s in states if not any(check_hw(s, c).passed for c in stronger)]
            stronger.append(condition)
            kind = singular_kind(spec.variant, condition)
            for state in fresh:
                found.append(
                    SingularVector(
                        kind=kind,
                        bigrade=g,
                        condition=condition,
                        state=state,
                        verified=check_hw(state, condition).passed,
                        kernel_dimension=len(states),
                    )
                )
    logger.info(f"{spec.describe()}: 能级 ≤ {max_level} 找到 {len(found)} 个奇异向量")
    return found


def kernel_dimension_at(spec: ModuleSpec, bigrade: Bigrade, kind: Optional[ConditionKind] = None) -> int:
    """kind 为空时取第一个条件 (带荷条件优先)"""
    conditions = search_conditions(spec, bigrade)
    if kind is not None:
        conditions = [c for c in conditions if c.kind is kind]
    if not conditions:
        return 0
    return len(annihilation_kernel(build_module(spec), bigrade, conditions[0]))
