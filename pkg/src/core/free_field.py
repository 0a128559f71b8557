"""
自由场: 标量 Fock 空间、顶点算子 ψ = e^φ, ψ* = e^{−φ}、复合模与 N=2 → sl(2) 算子构造

Ξ = ⊕_n F_n, F_n 上 a_0 = −n, 度规 −1, 余圈取平凡。
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from .algebra import AffineSL2Algebra, GeneratorMode, ModePolynomial, Word, word_text
from .characters import TRIGRADE, CharacterSeries, character, partition_counts
from .exceptions import ModuleSpecError
from .modules import (
    Bigrade,
    ConditionKind,
    HWCondition,
    ModuleSpec,
    ModuleVariant,
    VermaTypeModule,
    build_module,
    operator_kernel,
)
from .scalar import ONE, ZERO, RatFun
from ..utils.logger import get_logger

logger = get_logger(__name__)

Partition = Tuple[int, ...]
FockKey = Tuple[int, Partition]
TensorKey = Tuple[Word, int, Partition]

XI_METRIC = RatFun(-1)


def _add_into(target: Dict, key: object, value: RatFun) -> None:
    total = target.get(key, ZERO) + value
    if total.is_zero:
        target.pop(key, None)
    else:
        target[key] = total


def partition_tuples(n: int) -> List[Partition]:
    """n 的全部分拆, 部分降序排列"""
    if n == 0:
        return [()]
    result = []
    for p in partitions(n):
        parts: List[int] = []
        for k, mult in sorted(p.items(), reverse=True):
            parts.extend([k] * mult)
        result.append(tuple(parts))
    return sorted(result, reverse=True)


def fock_energy(n: int) -> int:
    """F_n 真空的 L0 能量 −n(n−1)/2"""
    return -n * (n - 1) // 2


@dataclass(frozen=True)
class FockSpace:
    """标量场 Fock 空间族, sector n 上 a_0 = base + step·n"""
    metric: RatFun = XI_METRIC
    base: RatFun = ZERO
    step: RatFun = RatFun(-1)

    def momentum(self, sector: int) -> RatFun:
        return self.base + self.step * sector

    def oscillator(self, k: int, key: FockKey) -> Dict[FockKey, RatFun]:
        """a_k 作用在基态上"""
        sector, parts = key
        if k < 0:
            return {(sector, tuple(sorted(parts + (-k,), reverse=True))): ONE}
        if k == 0:
            value = self.momentum(sector)
            return {} if value.is_zero else {key: value}
        mult = parts.count(k)
        if not mult:
            return {}
        rest = list(parts)
        rest.remove(k)
        return {(sector, tuple(rest)): self.metric * (mult * k)}


XI = FockSpace()


@dataclass
class FockState:
    """Fock 空间中的态: (sector, 分拆) → 系数"""
    terms: Dict[FockKey, RatFun] = field(default_factory=dict)
    space: FockSpace = XI

    @classmethod
    def vacuum(cls, sector: int = 0, space: FockSpace = XI) -> "FockState":
        return cls({(sector, ()): ONE}, space)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (sector, parts), c in sorted(self.terms.items()):
            osc = " ".join(f"a_{-k}" for k in parts)
            pieces.append(f"({c}) {osc} |{sector}>".replace("  ", " "))
        return " + ".join(pieces)


def _apply_oscillators(space: FockSpace, word: Mapping[int, int], key: FockKey) -> Dict[FockKey, RatFun]:
    """作用一组互相对易的振子 {k: 重数}"""
    current: Dict[FockKey, RatFun] = {key: ONE}
    for k, mult in word.items():
        for _ in range(mult):
            nxt: Dict[FockKey, RatFun] = {}
            for kk, c in current.items():
                for k2, c2 in space.oscillator(k, kk).items():
                    _add_into(nxt, k2, c * c2)
            current = nxt
    return current


def _exponential_terms(p: int, sign: int) -> List[Tuple[Dict[int, int], RatFun]]:
    """exp(sign·Σ_k x_k z^k / k) 中 z^p 的系数: [(单项式 {k: 重数}, 系数)]"""
    if p == 0:
        return [({}, ONE)]
    terms = []
    for part in partitions(p):
        mono = dict(part)
        coeff = Fraction(1)
        for k, mult in mono.items():
            coeff *= Fraction(sign, k) ** mult / factorial(mult)
        terms.append((mono, RatFun(coeff)))
    return terms


class Vertex(str, Enum):
    PSI = "psi"
    PSI_STAR = "psi*"


def vertex_mode_key(which: Vertex, m: int, key: FockKey) -> Dict[FockKey, RatFun]:
    """ψ_m 或 ψ*_m 作用在 Ξ 的基态上 (ψ(z) = Σ ψ_m z^{−m}, ψ*(z) = Σ ψ*_m z^{1−m})"""
    sector, parts = key
    level = sum(parts)
    sign = 1 if which is Vertex.PSI else -1
    result: Dict[FockKey, RatFun] = {}
    for lower in range(level + 1):
        if which is Vertex.PSI:
            raise_by = sector + lower - m
        else:
            raise_by = 1 - m - sector + lower
        if raise_by < 0:
            continue
        for mono, c_plus in _exponential_terms(lower, -sign):
            annihilated = _apply_oscillators(XI, mono, key)
            if not annihilated:
                continue
            for mono2, c_minus in _exponential_terms(raise_by, sign):
                creators = {-k: mult for k, mult in mono2.items()}
                for (_, pk), c in annihilated.items():
                    for (_, pk2), c2 in _apply_oscillators(XI, creators, (sector, pk)).items():
                        _add_into(result, (sector + sign, pk2), c * c2 * c_plus * c_minus)
    return result


def vertex_mode(which: Vertex, m: int, state: FockState) -> FockState:
    if state.space.metric != XI_METRIC:
        raise ModuleSpecError("顶点算子只定义在度规 −1 的 Ξ 上")
    result: Dict[FockKey, RatFun] = {}
    for key, c in state.terms.items():
        for k2, c2 in vertex_mode_key(which, m, key).items():
            _add_into(result, k2, c * c2)
    return FockState(result)


def vertex_bound(which: Vertex, key: FockKey) -> int:
    """在基态上可能非零的最大模指标"""
    sector, parts = key
    level = sum(parts)
    return sector + level if which is Vertex.PSI else 1 - sector + level


class TensorState:
    """N=2 模 ⊗ Ξ 中的态"""

    __slots__ = ("module", "terms")

    def __init__(self, module: VermaTypeModule, terms: Optional[Mapping[TensorKey, RatFun]] = None):
        self.module = module
        self.terms: Dict[TensorKey, RatFun] = {k: v for k, v in (terms or {}).items() if not v.is_zero}

    @classmethod
    def product(cls, module: VermaTypeModule, word: Word = (), sector: int = 0, parts: Partition = ()) -> "TensorState":
        return cls(module, {(word, sector, parts): ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor: RatFun) -> "TensorState":
        return TensorState(self.module, {k: v * factor for k, v in self.terms.items()})

    def __add__(self, other: "TensorState") -> "TensorState":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(terms, k, v)
        return TensorState(self.module, terms)

    def __sub__(self, other: "TensorState") -> "TensorState":
        return self + other.scale(-ONE)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorState):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> List[Dict[str, str]]:
        out = []
        for (w, n, parts), c in sorted(self.terms.items(), key=lambda item: (item[0][1], item[0][2], str(item[0][0]))):
            left = f"{word_text(w)} v" if w else "v"
            osc = "".join(f"a_{-k} " for k in parts)
            out.append({"monomial": f"{left} ⊗ {osc}|{n}>", "coeff": str(c)})
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({e['coeff']}) {e['monomial']}" for e in self.to_json())


class SL2Current(str, Enum):
    PLUS = "J+"
    ZERO = "J0"
    MINUS = "J-"


class TensorProduct:
    """N=2 模与 Ξ 的张量积, 以及其上的 sl(2) 与 Heisenberg 作用"""

    def __init__(self, spec: ModuleSpec, margin: int = 0):
        if spec.variant not in (ModuleVariant.TOPOLOGICAL, ModuleVariant.MASSIVE) or spec.theta != 0:
            raise ModuleSpecError("张量积只对未扭曲的 topological / massive 模定义")
        if margin < 0:
            raise ModuleSpecError(f"求和余量不能为负: {margin}")
        self.spec = spec
        self.margin = margin
        self.module = build_module(spec)
        self.t = spec.t
        self.k = spec.t - 2
        self.sl2 = AffineSL2Algebra(self.k)
        self._cache: Dict[Tuple[str, int, TensorKey], Dict[TensorKey, RatFun]] = {}

    # 分次

    def grade(self, key: TensorKey) -> Tuple[int, int, int]:
        """(sl(2) 荷 m, 相对能级 d, 扭曲 θ)"""
        word, sector, parts = key
        bigrade = self.module.word_bigrade(word)
        theta = bigrade.charge + sector
        level = bigrade.level + sum(parts) + fock_energy(sector)
        return -bigrade.charge, level - fock_energy(theta), theta

    def component_basis(self, m: int, d: int, theta: int) -> List[TensorKey]:
        charge = -m
        sector = theta - charge
        total = d - fock_energy(sector) + fock_energy(theta)
        keys: List[TensorKey] = []
        for l_n in range(total + 1):
            words = self.module.basis(Bigrade(charge, l_n))
            if not words:
                continue
            for parts in partition_tuples(total - l_n):
                keys.extend((w, sector, parts) for w in words)
        return keys

    # 基本作用

    def _left(self, m: GeneratorMode, key: TensorKey) -> Dict[TensorKey, RatFun]:
        word, sector, parts = key
        return {(w, sector, parts): c for w, c in self.module.act_on_word(m, word).items()}

    def _right(self, which: Vertex, index: int, key: TensorKey) -> Dict[TensorKey, RatFun]:
        word, sector, parts = key
        return {(word, s, p): c for (s, p), c in vertex_mode_key(which, index, (sector, parts)).items()}

    def _oscillator(self, index: int, key: TensorKey) -> Dict[TensorKey, RatFun]:
        word, sector, parts = key
        return {(word, s, p): c for (s, p), c in XI.oscillator(index, (sector, parts)).items()}

    def composite_key(self, symbol: str, vertex: Vertex, n: int, key: TensorKey) -> Dict[TensorKey, RatFun]:
        """(A B)_n = Σ_a A_a B_{n−a}; A 与 B 作用在不同张量因子上"""
        word, sector, parts = key
        l_n = self.module.word_bigrade(word).level
        top = self.module.max_index(symbol, l_n) + self.margin
        bottom = n - vertex_bound(vertex, (sector, parts)) - self.margin
        result: Dict[TensorKey, RatFun] = {}
        for a in range(bottom, top + 1):
            right = self._right(vertex, n - a, key)
            if not right:
                continue
            mode = self.module.algebra.mode(symbol, a)
            for k2, c2 in right.items():
                for k3, c3 in self._left(mode, k2).items():
                    _add_into(result, k3, c2 * c3)
        return result

    def sl2_key(self, current: SL2Current, n: int, key: TensorKey) -> Dict[TensorKey, RatFun]:
        cache_key = (current.value, n, key)
        cached = self._cache.get(cache_key)
        if cached is not None:
            return cached
        half_t = self.t / 2
        if current is SL2Current.PLUS:
            result = self.composite_key("Q", Vertex.PSI, n, key)
        elif current is SL2Current.MINUS:
            result = {k: c * half_t for k, c in self.composite_key("G", Vertex.PSI_STAR, n, key).items()}
        else:
            result = {}
            for k2, c in self._left(self.module.algebra.mode("H", n), key).items():
                _add_into(result, k2, -half_t * c)
            for k2, c in self._oscillator(n, key).items():
                _add_into(result, k2, (self.t - 2) / 2 * c)
        self._cache[cache_key] = result
        return result

    def heisenberg_key(self, n: int, key: TensorKey) -> Dict[TensorKey, RatFun]:
        """Ĩ_n = H_n − a_n"""
        result: Dict[TensorKey, RatFun] = {}
        for k2, c in self._left(self.module.algebra.mode("H", n), key).items():
            _add_into(result, k2, c)
        for k2, c in self._oscillator(n, key).items():
            _add_into(result, k2, -c)
        return result

    def _lift(self, fn, state: TensorState) -> TensorState:
        result: Dict[TensorKey, RatFun] = {}
        for key, c in state.terms.items():
            for k2, c2 in fn(key).items():
                _add_into(result, k2, c * c2)
        return TensorState(self.module, result)

    def sl2_action(self, current: SL2Current, n: int, state: TensorState) -> TensorState:
        return self._lift(lambda key: self.sl2_key(current, n, key), state)

    def heisenberg_direction(self, n: int, state: TensorState) -> TensorState:
        return self._lift(lambda key: self.heisenberg_key(n, key), state)

    def composite_mode(self, symbol: str, vertex: Vertex, n: int, state: TensorState) -> TensorState:
        return self._lift(lambda key: self.composite_key(symbol, vertex, n, key), state)

    def apply_sl2_poly(self, poly: ModePolynomial, state: TensorState) -> TensorState:
        """sl(2) 线性多项式 (括号的结果) 作用在态上"""
        total = TensorState(self.module)
        for word, c in poly.items():
            if not word:
                total = total + state.scale(c)
            else:
                (m,) = word
                total = total + self.sl2_action(SL2Current(m.symbol), m.index, state).scale(c)
        return total

    @property
    def heisenberg_norm_square(self) -> RatFun:
        """Ĩ 的归一化因子平方 (k+2)/2"""
        return (self.k + 2) / 2

    def states_up_to(self, max_level: int, sectors: Iterable[int], charges: Iterable[int]) -> List[TensorKey]:
        keys = []
        charges = list(charges)
        for sector in sectors:
            for total in range(max_level + 1):
                for l_n in range(total + 1):
                    for q in charges:
                        for w in self.module.basis(Bigrade(q, l_n)):
                            for parts in partition_tuples(total - l_n):
                                keys.append((w, sector, parts))
        return keys


def heisenberg_direction(product: TensorProduct, n: int, state: TensorState) -> TensorState:
    return product.heisenberg_direction(n, state)


def sl2_action(product: TensorProduct, current: SL2Current, n: int, state: TensorState) -> TensorState:
    return product.sl2_action(current, n, state)


def composite_mode(product: TensorProduct, symbol: str, vertex: Vertex, n: int, state: TensorState) -> TensorState:
    return product.composite_mode(symbol, vertex, n, state)


@dataclass
class ClosureFailure:
    left: str
    right: str
    state: str


def check_sl2_closure(
    product: TensorProduct,
    max_level: int = 2,
    mode_span: int = 2,
    sectors: Sequence[int] = (-1, 0, 1),
    charges: Sequence[int] = (-1, 0, 1),
) -> List[ClosureFailure]:
    """sl(2) 括号、Ĩ 与 sl(2) 的对易性以及 Ĩ 的度规, 在截断内的全部基态上逐一检验"""
    failures: List[ClosureFailure] = []
    currents = list(SL2Current)
    indices = range(-mode_span, mode_span + 1)
    metric = -2 / product.t
    for key in product.states_up_to(max_level, sectors, charges):
        state = TensorState(product.module, {key: ONE})
        label = TensorState(product.module, {key: ONE}).to_json()[0]["monomial"]
        for i, x in enumerate(currents):
            for y in currents[i:]:
                for a in indices:
                    for b in indices:
                        xa = product.sl2.mode(x.value, a)
                        yb = product.sl2.mode(y.value, b)
                        lhs = product.sl2_action(x, a, product.sl2_action(y, b, state)) - product.sl2_action(
                            y, b, product.sl2_action(x, a, state)
                        )
                        rhs = product.apply_sl2_poly(product.sl2.bracket(xa, yb), state)
                        if lhs != rhs:
                            failures.append(ClosureFailure(str(xa), str(yb), label))
        for a in indices:
            for b in indices:
                for x in currents:
                    lhs = product.heisenberg_direction(a, product.sl2_action(x, b, state)) - product.sl2_action(
                        x, b, product.heisenberg_direction(a, state)
                    )
                    if not lhs.is_zero:
                        failures.append(ClosureFailure(f"I~{a}", f"{x.value}{b}", label))
                lhs = product.heisenberg_direction(a, product.heisenberg_direction(b, state)) - product.heisenberg_direction(
                    b, product.heisenberg_direction(a, state)
                )
                expected = state.scale(metric * a) if a + b == 0 else TensorState(product.module)
                if lhs != expected:
                    failures.append(ClosureFailure(f"I~{a}", f"I~{b}", label))
    logger.info(f"sl(2) closure on {product.spec.describe()}: {len(failures)} failures")
    return failures


# Theorem 检验: 最高权向量与维数表


class Theorem(str, Enum):
    TOPOLOGICAL = "theorem1"
    RELAXED = "theorem2"


@dataclass
class HighestWeightFinding:
    theta: int
    states: List[TensorState]
    passed: bool
    detail: str = ""


@dataclass
class DecompositionResult:
    theorem: Theorem
    spec: ModuleSpec
    theta_window: Tuple[int, int]
    charge_window: Tuple[int, int]
    max_level: int
    hw_found: List[HighestWeightFinding] = field(default_factory=list)
    lhs: Optional[CharacterSeries] = None
    rhs: Optional[CharacterSeries] = None
    mismatches: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.hw_found) and not self.mismatches

    @property
    def dictionary(self) -> Dict[str, str]:
        return {
            "theta": "H0 charge + Fock sector",
            "charge": "minus H0 charge",
            "level": "N=2 level + Fock level - n(n-1)/2 + theta(theta-1)/2",
        }


def sl2_target_spec(spec: ModuleSpec, theta: int) -> ModuleSpec:
    """j = −th/2, k = t−2 (以及 Λ = tℓ)"""
    j = -spec.t * spec.h / 2
    k = spec.t - 2
    if spec.variant is ModuleVariant.TOPOLOGICAL:
        return ModuleSpec.sl2_verma(j, k, theta)
    return ModuleSpec.relaxed(j, spec.t * spec.l, k, theta)


def find_highest_weight(product: TensorProduct, theta: int) -> HighestWeightFinding:
    """在 (m=0, d=0, θ) 分量中解扭曲最高权条件"""
    kind = ConditionKind.SL2_VERMA if product.spec.variant is ModuleVariant.TOPOLOGICAL else ConditionKind.RELAXED
    condition = HWCondition(kind, theta)
    basis = product.component_basis(0, 0, theta)
    ops: List[Tuple[SL2Current, int]] = []
    shifts = {SL2Current.PLUS: 1, SL2Current.ZERO: 0, SL2Current.MINUS: -1}
    for current in SL2Current:
        index = condition.lower_bounds()[current.value]
        # 目标分量为空之后更高的指标也只会落到空分量
        while product.component_basis(shifts[current], -index, theta):
            ops.append((current, index))
            index += 1
    vectors = operator_kernel(basis, ops, lambda op, key: product.sl2_key(op[0], op[1], key))
    states = [TensorState(product.module, dict(zip(basis, v))) for v in vectors]
    target = sl2_target_spec(product.spec, theta)
    j0 = target.j - target.k * theta / 2
    detail = []
    passed = len(states) == 1
    if len(states) != 1:
        detail.append(f"kernel dimension {len(states)}")
    for state in states:
        if product.sl2_action(SL2Current.ZERO, 0, state) != state.scale(j0):
            passed = False
            detail.append("J0_0 eigenvalue")
        if kind is ConditionKind.RELAXED:
            walked = product.sl2_action(SL2Current.MINUS, -theta, product.sl2_action(SL2Current.PLUS, theta, state))
            if walked != state.scale(target.lam):
                passed = False
                detail.append("J-J+ constraint")
    logger.debug(f"θ={theta}: basis {len(basis)}, ops {len(ops)}, kernel {len(states)}")
    return HighestWeightFinding(theta, states, passed, ", ".join(detail))


def decomposition_tables(
    spec: ModuleSpec,
    theta_window: Tuple[int, int],
    charge_window: Tuple[int, int],
    max_level: int,
) -> Tuple[CharacterSeries, CharacterSeries]:
    """两边 (m, d, θ) 分次的维数表"""
    lo_t, hi_t = theta_window
    lo_m, hi_m = charge_window
    reach = max(abs(lo_t), abs(hi_t)) * max(abs(lo_m), abs(hi_m))
    bounds = {"charge": (lo_m, hi_m), "level": (-reach, max_level), "sector": (lo_t, hi_t)}

    keys = [(m, d, th) for th in range(lo_t, hi_t + 1) for m in range(lo_m, hi_m + 1) for d in range(-reach, max_level + 1)]

    def lhs_total(m: int, d: int, th: int) -> int:
        return d - fock_energy(th + m) + fock_energy(th)

    top = max([lhs_total(*k) for k in keys] + [max_level + reach])
    parts = partition_counts(top)
    left_char = character(spec, (-hi_m, -lo_m), top)
    lhs: Dict[Tuple[int, ...], int] = {}
    rhs: Dict[Tuple[int, ...], int] = {}
    for m, d, th in keys:
        total = lhs_total(m, d, th)
        if total >= 0:
            lhs[(m, d, th)] = sum(left_char.dim(-m, l) * parts[total - l] for l in range(total + 1))
    for th in range(lo_t, hi_t + 1):
        right_char = character(sl2_target_spec(spec, th), charge_window, top)
        for m in range(lo_m, hi_m + 1):
            for d in range(-reach, max_level + 1):
                total = d + th * m
                if total >= 0:
                    rhs[(m, d, th)] = sum(right_char.dim(m, tw) * parts[total - tw] for tw in range(total + 1))
    return CharacterSeries(TRIGRADE, bounds, lhs), CharacterSeries(TRIGRADE, bounds, rhs)


def verify_decomposition(
    spec: ModuleSpec,
    theta_window: Tuple[int, int] = (-2, 2),
    max_level: int = 3,
    charge_window: Tuple[int, int] = (-2, 2),
    margin: int = 0,
) -> DecompositionResult:
    """V⊗Ξ (或 U⊗Ξ) 与 Σ_θ 扭曲 sl(2) 模 ⊗ Heisenberg Fock 的截断比较"""
    product = TensorProduct(spec, margin)
    theorem = Theorem.TOPOLOGICAL if spec.variant is ModuleVariant.TOPOLOGICAL else Theorem.RELAXED
    result = DecompositionResult(theorem, spec, theta_window, charge_window, max_level)
    for theta in range(theta_window[0], theta_window[1] + 1):
        result.hw_found.append(find_highest_weight(product, theta))
    result.lhs, result.rhs = decomposition_tables(spec, theta_window, charge_window, max_level)
    result.mismatches = result.lhs.difference(result.rhs)
    logger.info(f"{theorem.value} {spec.describe()}: {'通过' if result.passed else '失败'}")
    return result
