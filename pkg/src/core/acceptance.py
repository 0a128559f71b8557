"""
验收套件: 十一项精确检验, 每项给出通过/失败、耗时与细节

快速规模用于默认测试与 CLI 的日常运行, 完整规模对应桌面计算的截断。
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import AlgebraFamily, default_algebra
from .algebra import check_structure as algebra_structure
from .characters import quotient_character
from .exceptions import GradingError, N2VermaError, VerificationError
from .free_field import TensorProduct, check_sl2_closure, verify_decomposition
from .modules import (
    Bigrade,
    ConditionKind,
    CriterionKind,
    HWCondition,
    ModuleSpec,
    StateVector,
    Verdict,
    build_module,
    classify_criterion,
    gram_matrix,
    relaxed_extremal_norm,
)
from .scalar import RatFun, random_rational
from .singular import (
    charged_l,
    charged_lambda,
    construct_charged,
    detect_singular,
    kernel_dimension_at,
    kac_dimension,
    massive_level_one_l,
    relaxed_level_one_lambda,
    topological_h,
    topological_position,
)
from .string_realization import (
    check_n2_closure,
    check_string_hw,
    dress,
    dressing_dimension,
    ghost_picture_check,
    key_identity,
    key_identity_direct,
    matches_label,
    reduction_table,
    string_space,
)
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SuiteScale:
    """各项检验的规模"""
    name: str
    samples: int
    random_points: int
    flow_window: int
    norm_span: int
    charged_span: int
    topological_product: int
    off_locus_level: int
    theta_window: int
    decomposition_level: int
    closure_level: int
    closure_span: int
    correspondence_product: int
    string_level: int
    string_span: int
    dressing_window: int
    reduction_max: int
    key_samples: int
    classify_horizon: int = 8
    escape_depth: int = 2
    massive_off_locus_level: int = 2


QUICK = SuiteScale(
    name="quick",
    samples=60,
    random_points=2,
    flow_window=2,
    norm_span=3,
    charged_span=3,
    topological_product=2,
    off_locus_level=2,
    theta_window=1,
    decomposition_level=2,
    closure_level=1,
    closure_span=1,
    correspondence_product=1,
    string_level=1,
    string_span=1,
    dressing_window=1,
    reduction_max=3,
    key_samples=20,
)

FULL = SuiteScale(
    name="full",
    samples=500,
    random_points=5,
    flow_window=3,
    norm_span=6,
    charged_span=4,
    topological_product=4,
    off_locus_level=4,
    theta_window=2,
    decomposition_level=3,
    closure_level=2,
    closure_span=2,
    correspondence_product=2,
    string_level=2,
    string_span=2,
    dressing_window=2,
    reduction_max=3,
    key_samples=50,
)

SCALES = {s.name: s for s in (QUICK, FULL)}


@dataclass
class CriterionOutcome:
    number: int
    name: str
    passed: bool
    elapsed: float = 0.0
    checks: int = 0
    detail: str = ""


@dataclass
class SuiteResult:
    scale: str
    seed: int
    outcomes: List[CriterionOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def raise_for_failures(self) -> None:
        failed = [o for o in self.outcomes if not o.passed]
        if failed:
            first = failed[0]
            raise VerificationError(f"{len(failed)} 项检验失败", witness=f"{first.number}. {first.name}: {first.detail}")


class _Tally:
    """累计检验次数与失败信息"""

    def __init__(self) -> None:
        self.checks = 0
        self.failures: List[str] = []

    def expect(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)

    def detail(self) -> str:
        if not self.failures:
            return f"{self.checks} checks"
        shown = "; ".join(self.failures[:3])
        more = f" (+{len(self.failures) - 3})" if len(self.failures) > 3 else ""
        return f"{len(self.failures)}/{self.checks} failed: {shown}{more}"


def _rational(rng: random.Random, nonzero: bool = False) -> RatFun:
    return RatFun(random_rational(rng, nonzero=nonzero))


def _on_topological_locus(h: RatFun, t: RatFun, bound: int) -> bool:
    for r in range(1, bound + 1):
        for s in range(0, bound + 1):
            if h == RatFun(r + 1) / t - s or h == RatFun(s) - RatFun(r - 1) / t:
                return True
    return False


def _generic_t(rng: random.Random) -> RatFun:
    """分母为素数 7, 11 或 13 的非整数 t"""
    q = rng.choice((7, 11, 13))
    p = rng.choice([p for p in range(q + 1, 4 * q) if p % q])
    return RatFun(Fraction(p, q))


def _generic_point(rng: random.Random, bound: int) -> Tuple[RatFun, RatFun]:
    """不在小 (r, s) 拓扑轨迹上的随机 (h, t)"""
    while True:
        h, t = _rational(rng), _generic_t(rng)
        if not _on_topological_locus(h, t, bound):
            return h, t


def _off_locus_l(rng: random.Random) -> RatFun:
    """分母为 53 的 ℓ: h, t 的分母与 t 的分子都小于 53, 轨迹值的分母里没有这个素数"""
    return RatFun(Fraction(rng.randint(1, 52), 53))


# 各项检验


def check_structure(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    for family in AlgebraFamily:
        result = algebra_structure(default_algebra(family), rng, scale.samples, scale.flow_window)
        tally.checks += result.checks
        tally.failures.extend(f"{family.value} {w}" for w in result.witnesses())
    return tally


def check_norms(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    for _ in range(scale.random_points * 4):
        j, lam = _rational(rng), _rational(rng)
        k = _rational(rng)
        if k == RatFun(-2):
            continue
        spec = ModuleSpec.relaxed(j, lam, k)
        for n in range(-scale.norm_span, scale.norm_span + 1):
            gram = gram_matrix(spec, Bigrade(n, 0))
            ok = len(gram.basis) == 1 and gram.entries[0][0] == relaxed_extremal_norm(j, lam, n)
            tally.expect(ok, f"norm n={n} j={j} Λ={lam}")
    return tally


def check_charged(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    j, k = _rational(rng), RatFun(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
    for p in range(-scale.charged_span, scale.charged_span + 1):
        vector = construct_charged(p, j, k)
        if p == 0:
            logger.info(f"charged p=0: {vector.condition} -> {vector.verified}")
            continue
        tally.expect(vector.verified, f"p={p} {vector.condition}")
    return tally


def _quotient_nonnegative(sign: str, r: int, s: int, t: RatFun, q: int, level: int) -> bool:
    try:
        quotient_character(sign, r, s, t, (q - 1, q + 1), level)
    except GradingError as e:
        logger.warning(f"E{sign}({r},{s}): {e}")
        return False
    return True


def check_topological(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    t = RatFun.t()
    for r in range(1, scale.topological_product + 1):
        for s in range(1, scale.topological_product // r + 1):
            for sign in ("-", "+"):
                spec = ModuleSpec.topological(topological_h(sign, r, s, t), t)
                q, level, theta = topological_position(sign, r, s)
                found = [v for v in detect_singular(spec, level, min_level=level) if v.bigrade == Bigrade(q, level)]
                ok = len(found) == 1 and found[0].verified and found[0].condition.theta == theta
                tally.expect(ok, f"E{sign}({r},{s}) at ({q},{level})")
                tally.expect(_quotient_nonnegative(sign, r, s, t, q, level), f"quotient E{sign}({r},{s})")
    for _ in range(scale.random_points * 2):
        h, t0 = _generic_point(rng, scale.off_locus_level + 1)
        found = detect_singular(ModuleSpec.topological(h, t0), scale.off_locus_level)
        tally.expect(not found, f"off-locus h={h} t={t0}: {len(found)}")
    return tally


def _check_theorem(spec: ModuleSpec, scale: SuiteScale, tally: _Tally) -> None:
    failures = check_sl2_closure(
        TensorProduct(spec), max_level=scale.closure_level, mode_span=scale.closure_span
    )
    tally.expect(not failures, f"sl(2) closure {spec.describe()}: {len(failures)}")
    window = (-scale.theta_window, scale.theta_window)
    result = verify_decomposition(spec, window, scale.decomposition_level, window)
    for finding in result.hw_found:
        tally.expect(finding.passed, f"θ={finding.theta}: {finding.detail}")
    tally.expect(not result.mismatches, f"dimension tables: {len(result.mismatches)} mismatches")


def check_theorem_topological(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    h, t = _generic_point(rng, 4)
    _check_theorem(ModuleSpec.topological(h, t), scale, tally)
    return tally


def check_theorem_relaxed(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    h, t = _generic_point(rng, 4)
    l = _rational(rng)
    _check_theorem(ModuleSpec.massive(h, l, t), scale, tally)
    return tally


def check_correspondence(scale: SuiteScale, rng: random.Random) -> _Tally:
    """拓扑/带荷奇异向量在字典下两侧同时出现"""
    tally = _Tally()
    t = _generic_point(rng, 4)[1]
    k = t - 2
    for r in range(1, scale.correspondence_product + 1):
        for s in range(1, scale.correspondence_product // r + 1):
            for sign in ("-", "+"):
                h = topological_h(sign, r, s, t)
                q, level, _ = topological_position(sign, r, s)
                n2_dim = kernel_dimension_at(ModuleSpec.topological(h, t), Bigrade(q, level))
                sl2_grade = Bigrade(-q, level - q * (q + 1) // 2)
                sl2_dim = kernel_dimension_at(ModuleSpec.sl2_verma(-t * h / 2, k), sl2_grade)
                tally.expect(n2_dim == 1 and sl2_dim == 1, f"E{sign}({r},{s}): N=2 {n2_dim}, sl(2) {sl2_dim}")
    h = _generic_point(rng, 4)[0]
    for p in range(-2, 3):
        massive = ModuleSpec.massive(h, charged_l(p, h, t), t)
        q = -(p + 1) if p >= 0 else -p
        n2_dim = kernel_dimension_at(massive, Bigrade(q, q * (q + 1) // 2), ConditionKind.TOPOLOGICAL)
        tally.expect(t * charged_l(p, h, t) == charged_lambda(p, -t * h / 2), f"Λ = tℓ at p={p}")
        tally.expect(n2_dim == 1 and construct_charged(p, -t * h / 2, k).verified, f"charged p={p}: N=2 {n2_dim}")
    # 无荷: (0, 1) 处的 massive 奇异向量对应 relaxed 奇异向量
    l = massive_level_one_l(h, t)
    j = -t * h / 2
    tally.expect(relaxed_level_one_lambda(j, k) == t * l, f"level-one Λ = tℓ at h={h}")
    n2_dim = kernel_dimension_at(ModuleSpec.massive(h, l, t), Bigrade(0, 1), ConditionKind.MASSIVE)
    sl2_dim = kernel_dimension_at(ModuleSpec.relaxed(j, t * l, k), Bigrade(0, 1), ConditionKind.RELAXED)
    tally.expect(n2_dim == 1 and sl2_dim == 1, f"uncharged level one: N=2 {n2_dim}, sl(2) {sl2_dim}")
    h, t = _generic_point(rng, scale.off_locus_level + 2)
    level = scale.off_locus_level
    tally.expect(not detect_singular(ModuleSpec.topological(h, t), level), f"off-locus N=2 h={h} t={t}")
    tally.expect(not detect_singular(ModuleSpec.sl2_verma(-t * h / 2, t - 2), level), f"off-locus sl(2) h={h} t={t}")
    l = _off_locus_l(rng)
    level = scale.massive_off_locus_level
    massive = detect_singular(ModuleSpec.massive(h, l, t), level)
    relaxed = detect_singular(ModuleSpec.relaxed(-t * h / 2, t * l, t - 2), level)
    tally.expect(not massive, f"off-locus massive h={h} ℓ={l} t={t}: {len(massive)}")
    tally.expect(not relaxed, f"off-locus relaxed h={h} ℓ={l} t={t}: {len(relaxed)}")
    return tally


def check_string_closure(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    t = RatFun.t()
    space = string_space(t, _rational(rng), _rational(rng), 0)
    failures = check_n2_closure(space, scale.string_level, scale.string_span)
    tally.checks += 1
    if failures:
        f = failures[0]
        tally.failures.append(f"{len(failures)} brackets, first [{f.left},{f.right}] on {f.state}")
    return tally


def check_dressing(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    for _ in range(scale.random_points):
        h, delta, t = _rational(rng), _rational(rng), _rational(rng, nonzero=True)
        for theta in range(-scale.dressing_window, scale.dressing_window + 1):
            state, label = dress(delta, h, t, theta)
            tally.expect(matches_label(state, label), f"dress θ={theta} h={h} Δ={delta} t={t}")
            state, label = dress(dressing_dimension(h, t), h, t, theta)
            topological = HWCondition(ConditionKind.TOPOLOGICAL, theta)
            tally.expect(label.l.is_zero and bool(check_string_hw(state, topological)), f"effect θ={theta} h={h} t={t}")
    for theta in range(-3, 4):
        tally.expect(ghost_picture_check(theta), f"ghost picture {theta}")
    for row in reduction_table(scale.reduction_max, scale.reduction_max, RatFun.t()):
        tally.expect(row.equal, f"reduction {row.sign}({row.r},{row.s})")
    t = RatFun.t()
    for r in range(1, scale.reduction_max + 1):
        for s in range(1, scale.reduction_max + 1):
            tally.expect(
                dressing_dimension(topological_h("-", r, s, t), t) == kac_dimension(r, s, t), f"Δ(h⁻({r},{s}))"
            )
    return tally


def check_criteria(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    j, k = _rational(rng), RatFun(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
    lam = _rational(rng, nonzero=True)
    h, t = _generic_point(rng, 4)
    l = _rational(rng, nonzero=True)
    samples: List[Tuple[StateVector, CriterionKind, Verdict]] = []
    verma = build_module(ModuleSpec.sl2_verma(j, k))
    for level in range(2):
        for q in range(-1, 2):
            for word in verma.basis(Bigrade(q, level)):
                samples.append((StateVector(verma, {word: RatFun(1)}), CriterionKind.RELAXED_SL2, Verdict.HOLDS))
    relaxed = build_module(ModuleSpec.relaxed(j, lam, k))
    for q in (-1, 0, 1):
        word = relaxed.basis(Bigrade(q, 0))[0]
        samples.append((StateVector(relaxed, {word: RatFun(1)}), CriterionKind.RELAXED_SL2, Verdict.FAILS))
    top = build_module(ModuleSpec.topological(h, t)).vacuum()
    mass = build_module(ModuleSpec.massive(h, l, t)).vacuum()
    samples += [
        (top, CriterionKind.TOPOLOGICAL_PARABOLA, Verdict.HOLDS),
        (top, CriterionKind.MASSIVE_LINE, Verdict.HOLDS),
        (mass, CriterionKind.TOPOLOGICAL_PARABOLA, Verdict.FAILS),
        (mass, CriterionKind.MASSIVE_LINE, Verdict.HOLDS),
    ]
    for state, which, expected in samples:
        verdict = classify_criterion(state, which, scale.classify_horizon, scale.escape_depth).verdict
        tally.expect(verdict is expected, f"{which.value} on {state}: {verdict.value}")
    return tally


def check_key_identity(scale: SuiteScale, rng: random.Random) -> _Tally:
    tally = _Tally()
    points = [RatFun.t(), RatFun(1), RatFun(2), RatFun(Fraction(3, 2)), _rational(rng, nonzero=True)]
    for _ in range(scale.key_samples):
        r, s = rng.randint(1, 4), rng.randint(0, 3)
        theta1 = rng.randint(-3, 3)
        t = rng.choice(points)
        # 一半样本取在恒等式成立的 θ2 上 (若为整数)
        shift = r + theta1 - s * t
        theta2 = rng.randint(-3, 3)
        if rng.random() < 0.5 and shift.is_constant and shift.constant_value().denominator == 1:
            theta2 = int(shift.constant_value())
        tally.expect(
            key_identity(r, s, theta1, theta2, t) == key_identity_direct(r, s, theta1, theta2, t),
            f"key r={r} s={s} θ=({theta1},{theta2}) t={t}",
        )
    return tally


CRITERIA: List[Tuple[int, str, Callable[[SuiteScale, random.Random], _Tally]]] = [
    (1, "structure", check_structure),
    (2, "norm-formula", check_norms),
    (3, "charged-singular", check_charged),
    (4, "topological-singular", check_topological),
    (5, "theorem-topological", check_theorem_topological),
    (6, "theorem-relaxed", check_theorem_relaxed),
    (7, "singularity-correspondence", check_correspondence),
    (8, "string-closure", check_string_closure),
    (9, "dressing-effect", check_dressing),
    (10, "criteria-classification", check_criteria),
    (11, "key-identity", check_key_identity),
]


def run_criterion(number: int, scale: SuiteScale, seed: int) -> CriterionOutcome:
    _, name, check = next(c for c in CRITERIA if c[0] == number)
    rng = random.Random(seed * 100 + number)
    started = time.perf_counter()
    try:
        tally = check(scale, rng)
    except N2VermaError as e:
        logger.error(f"criterion {number} ({name}) raised: {e}")
        return CriterionOutcome(number, name, False, time.perf_counter() - started, 0, f"error: {e}")
    elapsed = time.perf_counter() - started
    passed = not tally.failures
    logger.info(f"criterion {number} ({name}): {'pass' if passed else 'FAIL'} in {elapsed:.2f}s")
    return CriterionOutcome(number, name, passed, elapsed, tally.checks, tally.detail())


def run_suite(scale: SuiteScale = QUICK, seed: int = 20240127, only: Optional[List[int]] = None) -> SuiteResult:
    """按编号顺序运行验收检验"""
    result = SuiteResult(scale.name, seed)
    for number, _, _ in CRITERIA:
        if only and number not in only:
            continue
        result.outcomes.append(run_criterion(number, scale, seed))
    return result


def scale_by_name(name: str) -> SuiteScale:
    if name not in SCALES:
        raise N2VermaError(f"未知的规模: {name}")
    return SCALES[name]


def summary_counts(result: SuiteResult) -> Dict[str, int]:
    passed = sum(1 for o in result.outcomes if o.passed)
    return {"passed": passed, "failed": len(result.outcomes) - passed}
