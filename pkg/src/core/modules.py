"""
Verma 型模: sl(2) Verma/扭曲、relaxed、N=2 massive、N=2 topological、Fock 标量、bc 鬼场、Virasoro Verma

每个模把每个模 (mode) 分类为湮灭、Cartan (本征值)、产生或 relaxed 的零能级特殊字母;
态是 PBW 有序产生词的线性组合, 模作用按对易关系递归计算并缓存。
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import count
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    AffineSL2Algebra,
    AlgebraFamily,
    GeneratorMode,
    GhostAlgebra,
    HeisenbergAlgebra,
    LieSuperalgebra,
    ModePolynomial,
    N2Algebra,
    VirasoroAlgebra,
    Word,
    word_text,
)
from .exceptions import ModuleSpecError, TruncationError
from .linalg import nullspace
from .scalar import ONE, ZERO, RatFun
from ..utils.logger import get_logger

logger = get_logger(__name__)


class ModuleVariant(str, Enum):
    """模的种类"""
    SL2_VERMA = "sl2-verma"
    RELAXED = "relaxed"
    TOPOLOGICAL = "topological"
    MASSIVE = "massive"
    FOCK = "fock"
    GHOST = "ghost"
    VIRASORO = "virasoro"


class ModeRole(str, Enum):
    ANNIHILATE = "annihilate"
    CARTAN = "cartan"
    CREATE = "create"
    SPECIAL = "special"


@dataclass(frozen=True)
class ModuleSpec:
    """模的定义数据"""
    variant: ModuleVariant
    theta: int = 0
    t: Optional[RatFun] = None
    h: Optional[RatFun] = None
    l: Optional[RatFun] = None
    j: Optional[RatFun] = None
    lam: Optional[RatFun] = None
    k: Optional[RatFun] = None
    delta: Optional[RatFun] = None
    central_charge: Optional[RatFun] = None
    metric: Optional[RatFun] = None
    momentum: Optional[RatFun] = None

    _REQUIRED = {
        ModuleVariant.SL2_VERMA: ("j", "k"),
        ModuleVariant.RELAXED: ("j", "lam", "k"),
        ModuleVariant.TOPOLOGICAL: ("h", "t"),
        ModuleVariant.MASSIVE: ("h", "l", "t"),
        ModuleVariant.FOCK: ("metric", "momentum"),
        ModuleVariant.GHOST: (),
        ModuleVariant.VIRASORO: ("delta", "central_charge"),
    }

    def __post_init__(self) -> None:
        missing = [name for name in self._REQUIRED[self.variant] if getattr(self, name) is None]
        if missing:
            raise ModuleSpecError(f"{self.variant.value} 模缺少参数: {', '.join(missing)}")
        if self.t is not None and self.t.is_zero:
            raise ModuleSpecError("t 不能为 0")
        if self.k is not None and self.k == RatFun(-2):
            raise ModuleSpecError("水平 k 不能为 -2")
        if self.metric is not None and self.metric.is_zero:
            raise ModuleSpecError("度规不能为 0")

    @classmethod
    def topological(cls, h: RatFun, t: RatFun, theta: int = 0) -> "ModuleSpec":
        return cls(ModuleVariant.TOPOLOGICAL, theta=theta, h=h, t=t)

    @classmethod
    def massive(cls, h: RatFun, l: RatFun, t: RatFun, theta: int = 0) -> "ModuleSpec":
        return cls(ModuleVariant.MASSIVE, theta=theta, h=h, l=l, t=t)

    @classmethod
    def sl2_verma(cls, j: RatFun, k: RatFun, theta: int = 0) -> "ModuleSpec":
        return cls(ModuleVariant.SL2_VERMA, theta=theta, j=j, k=k)

    @classmethod
    def relaxed(cls, j: RatFun, lam: RatFun, k: RatFun, theta: int = 0) -> "ModuleSpec":
        return cls(ModuleVariant.RELAXED, theta=theta, j=j, lam=lam, k=k)

    @classmethod
    def fock(cls, metric: RatFun, momentum: RatFun) -> "ModuleSpec":
        return cls(ModuleVariant.FOCK, metric=metric, momentum=momentum)

    @classmethod
    def ghost(cls, theta: int) -> "ModuleSpec":
        return cls(ModuleVariant.GHOST, theta=theta)

    @classmethod
    def virasoro(cls, delta: RatFun, central_charge: RatFun) -> "ModuleSpec":
        return cls(ModuleVariant.VIRASORO, delta=delta, central_charge=central_charge)

    def parameters(self) -> Dict[str, str]:
        names = self._REQUIRED[self.variant]
        params = {name: str(getattr(self, name)) for name in names}
        params["theta"] = str(self.theta)
        return params

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"{self.variant.value}({args})"


@dataclass(frozen=True, order=True)
class Bigrade:
    """(荷, 能级) 双分次"""
    charge: int
    level: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"能级必须非负: {self.level}")

    def __str__(self) -> str:
        return f"({self.charge},{self.level})"


Terms = Dict[Word, RatFun]


def _accumulate(target: Terms, source: Mapping[Word, RatFun], factor: RatFun) -> None:
    for w, c in source.items():
        value = target.get(w, ZERO) + c * factor
        if value.is_zero:
            target.pop(w, None)
        else:
            target[w] = value


class VermaTypeModule:
    """由最高权型向量自由生成的模"""

    variant: ModuleVariant

    def __init__(self, spec: ModuleSpec, algebra: LieSuperalgebra):
        self.spec = spec
        self.algebra = algebra
        self.theta = spec.theta
        self._mul_cache: Dict[Tuple[GeneratorMode, Word], Terms] = {}
        self._basis_cache: Dict[Bigrade, List[Word]] = {}

    # 子类钩子

    def twist_shift(self, symbol: str) -> int:
        """扭曲指标 = 指标 + twist_shift(符号)"""
        return 0

    def role(self, m: GeneratorMode) -> ModeRole:
        raise NotImplementedError

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        raise NotImplementedError

    def level_zero_words(self, charge_diff: int) -> List[Word]:
        """零能级字母补足荷差 charge_diff 的词"""
        return [()] if charge_diff == 0 else []

    def _special_base(self, x: GeneratorMode, word: Word) -> Optional[Terms]:
        return None

    # 分次

    def twisted_index(self, m: GeneratorMode) -> int:
        return m.index + self.twist_shift(m.symbol)

    def mode_level(self, m: GeneratorMode) -> int:
        return -self.twisted_index(m)

    def mode_at_level(self, symbol: str, level: int) -> GeneratorMode:
        return self.algebra.mode(symbol, -level - self.twist_shift(symbol))

    def sort_key(self, m: GeneratorMode) -> Tuple[int, int, int]:
        return (-self.mode_level(m), m.symbol_rank, m.index)

    def word_key(self, word: Word) -> List[Tuple[int, int, int]]:
        return [self.sort_key(m) for m in word]

    def word_bigrade(self, word: Word) -> Bigrade:
        return Bigrade(sum(m.charge for m in word), sum(self.mode_level(m) for m in word))

    def max_index(self, symbol: str, level: int) -> int:
        """在能级 <= level 的态上可能非零作用的最大指标"""
        return level - self.twist_shift(symbol)

    def vacuum(self) -> "StateVector":
        return StateVector(self, {(): ONE})

    # 作用

    def _mul(self, x: GeneratorMode, word: Word) -> Terms:
        key = (x, word)
        cached = self._mul_cache.get(key)
        if cached is None:
            cached = self._compute_mul(x, word)
            self._mul_cache[key] = cached
        return cached

    def _compute_mul(self, x: GeneratorMode, word: Word) -> Terms:
        role = self.role(x)
        if not word:
            if role is ModeRole.ANNIHILATE:
                return {}
            if role is ModeRole.CARTAN:
                value = self.cartan_value(x)
                return {} if value.is_zero else {(): value}
            return {(x,): ONE}

        head, rest = word[0], word[1:]
        if role is ModeRole.CREATE:
            if x == head and x.is_fermionic:
                # x x = ½[x,x]
                return self._apply_poly(self.algebra.bracket(x, x), rest, ONE / 2)
            if x == head or self.sort_key(x) < self.sort_key(head):
                return {(x,) + word: ONE}
        elif role is ModeRole.SPECIAL:
            if x == head:
                return {(x,) + word: ONE}
            base = self._special_base(x, word)
            if base is not None:
                return base

        # x·head·rest = ±head·(x·rest) + [x, head]·rest
        sign = -ONE if (x.is_fermionic and head.is_fermionic) else ONE
        result: Terms = {}
        for w, c in self._mul(x, rest).items():
            _accumulate(result, self._mul(head, w), c * sign)
        bracket = self.algebra.bracket(x, head)
        for w, c in self._apply_poly(bracket, rest, ONE).items():
            _accumulate(result, {w: c}, ONE)
        return result

    def _apply_poly(self, poly: ModePolynomial, word: Word, factor: RatFun) -> Terms:
        """线性多项式作用在词上"""
        result: Terms = {}
        for w, c in poly.items():
            if not w:
                _accumulate(result, {word: ONE}, c * factor)
            else:
                terms: Terms = {word: ONE}
                for m in reversed(w):
                    nxt: Terms = {}
                    for tw, tc in terms.items():
                        _accumulate(nxt, self._mul(m, tw), tc)
                    terms = nxt
                _accumulate(result, terms, c * factor)
        return result

    def act(self, m: GeneratorMode, state: "StateVector") -> "StateVector":
        """模 m 作用在态上"""
        if m.algebra is not self.algebra.family:
            raise ModuleSpecError(f"{m} 不作用于 {self.spec.describe()}")
        result: Terms = {}
        for w, c in state.terms.items():
            _accumulate(result, self._mul(m, w), c)
        return StateVector(self, result)

    def apply_word(self, word: Sequence[GeneratorMode], state: "StateVector") -> "StateVector":
        """依次作用 (最右边的模先作用)"""
        for m in reversed(list(word)):
            state = self.act(m, state)
        return state

    def act_on_word(self, m: GeneratorMode, word: Word) -> Terms:
        return self._mul(m, word)

    # 基

    def creators_up_to(self, level: int) -> List[GeneratorMode]:
        """能级 1..level 的产生模, 按 PBW 次序"""
        modes = []
        for symbol in self.algebra.symbols:
            for lv in range(1, level + 1):
                m = self.mode_at_level(symbol, lv)
                if self.role(m) is ModeRole.CREATE:
                    modes.append(m)
        return sorted(modes, key=self.sort_key)

    def basis(self, bigrade: Bigrade) -> List[Word]:
        cached = self._basis_cache.get(bigrade)
        if cached is not None:
            return cached
        creators = self.creators_up_to(bigrade.level)
        words: List[Word] = []

        def rec(i: int, remaining: int, charge: int, prefix: Word) -> None:
            if remaining == 0:
                for tail in self.level_zero_words(bigrade.charge - charge):
                    words.append(prefix + tail)
                return
            if i == len(creators):
                return
            m = creators[i]
            lv = self.mode_level(m)
            max_mult = 1 if m.is_fermionic else remaining // lv
            for mult in range(min(max_mult, remaining // lv), -1, -1):
                rec(i + 1, remaining - mult * lv, charge + mult * m.charge, prefix + (m,) * mult)

        rec(0, bigrade.level, 0, ())
        words.sort(key=self.word_key)
        self._basis_cache[bigrade] = words
        return words


class SL2VermaModule(VermaTypeModule):
    """扭曲 sl(2) Verma 模"""

    variant = ModuleVariant.SL2_VERMA

    def __init__(self, spec: ModuleSpec):
        super().__init__(spec, AffineSL2Algebra(spec.k))

    def twist_shift(self, symbol: str) -> int:
        return {"J+": -self.theta, "J-": self.theta}.get(symbol, 0)

    def role(self, m: GeneratorMode) -> ModeRole:
        ti = self.twisted_index(m)
        if m.symbol == "J+":
            return ModeRole.ANNIHILATE if ti >= 0 else ModeRole.CREATE
        if m.symbol == "J-":
            return ModeRole.ANNIHILATE if ti >= 1 else ModeRole.CREATE
        if ti == 0:
            return ModeRole.CARTAN
        return ModeRole.ANNIHILATE if ti > 0 else ModeRole.CREATE

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        return self.spec.j - self.spec.k * self.theta / 2

    def level_zero_words(self, charge_diff: int) -> List[Word]:
        if charge_diff > 0:
            return []
        return [(self.mode_at_level("J-", 0),) * (-charge_diff)]


class RelaxedModule(SL2VermaModule):
    """扭曲 relaxed Verma 模; J+_θ, J−_{−θ} 在零能级受约束 J−_{−θ}J+_θ v = Λ v"""

    variant = ModuleVariant.RELAXED

    def role(self, m: GeneratorMode) -> ModeRole:
        ti = self.twisted_index(m)
        if m.symbol in ("J+", "J-"):
            if ti == 0:
                return ModeRole.SPECIAL
            return ModeRole.ANNIHILATE if ti > 0 else ModeRole.CREATE
        return super().role(m)

    def level_zero_words(self, charge_diff: int) -> List[Word]:
        if charge_diff >= 0:
            return [(self.mode_at_level("J+", 0),) * charge_diff]
        return [(self.mode_at_level("J-", 0),) * (-charge_diff)]

    def _special_base(self, x: GeneratorMode, word: Word) -> Optional[Terms]:
        if x.symbol == "J-" and len(word) == 1 and word[0].symbol == "J+":
            lam = self.spec.lam
            return {} if lam.is_zero else {(): lam}
        return None


class TopologicalModule(VermaTypeModule):
    """扭曲拓扑 Verma 模"""

    variant = ModuleVariant.TOPOLOGICAL

    def __init__(self, spec: ModuleSpec):
        super().__init__(spec, N2Algebra.from_t(spec.t))
        self.c = self.algebra.central_charge

    def twist_shift(self, symbol: str) -> int:
        return {"Q": self.theta, "G": -self.theta}.get(symbol, 0)

    def _fermion_threshold(self, symbol: str) -> int:
        return 0

    def role(self, m: GeneratorMode) -> ModeRole:
        ti = self.twisted_index(m)
        if m.symbol in ("Q", "G"):
            return ModeRole.ANNIHILATE if ti >= self._fermion_threshold(m.symbol) else ModeRole.CREATE
        if ti == 0:
            return ModeRole.CARTAN
        return ModeRole.ANNIHILATE if ti > 0 else ModeRole.CREATE

    def h0_value(self) -> RatFun:
        return self.spec.h - self.c * self.theta / 3

    def l0_value(self) -> RatFun:
        theta = self.theta
        return -theta * self.h0_value() - self.c * (theta * theta + theta) / 6

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        return self.h0_value() if m.symbol == "H" else self.l0_value()


class MassiveModule(TopologicalModule):
    """扭曲 massive Verma 模; Q_{−θ} 是零能级费米产生元"""

    variant = ModuleVariant.MASSIVE

    def _fermion_threshold(self, symbol: str) -> int:
        return 1 if symbol == "Q" else 0

    def l0_value(self) -> RatFun:
        return self.spec.l + super().l0_value()

    def level_zero_words(self, charge_diff: int) -> List[Word]:
        if charge_diff == 0:
            return [()]
        if charge_diff == -1:
            return [(self.mode_at_level("Q", 0),)]
        return []


class FockModule(VermaTypeModule):
    """标量 Heisenberg Fock 模, a_0 = momentum"""

    variant = ModuleVariant.FOCK

    def __init__(self, spec: ModuleSpec):
        super().__init__(spec, HeisenbergAlgebra(spec.metric))

    def role(self, m: GeneratorMode) -> ModeRole:
        if m.index == 0:
            return ModeRole.CARTAN
        return ModeRole.ANNIHILATE if m.index > 0 else ModeRole.CREATE

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        return self.spec.momentum


class GhostModule(VermaTypeModule):
    """bc 鬼场 Fock 空间, 真空 |θ⟩ 被 b_{≥θ}, c_{≥1−θ} 湮灭"""

    variant = ModuleVariant.GHOST

    def __init__(self, spec: ModuleSpec):
        super().__init__(spec, GhostAlgebra())

    def twist_shift(self, symbol: str) -> int:
        return -self.theta if symbol == "b" else self.theta

    def role(self, m: GeneratorMode) -> ModeRole:
        ti = self.twisted_index(m)
        threshold = 0 if m.symbol == "b" else 1
        return ModeRole.ANNIHILATE if ti >= threshold else ModeRole.CREATE

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        return ZERO

    def level_zero_words(self, charge_diff: int) -> List[Word]:
        if charge_diff == 0:
            return [()]
        if charge_diff == -1:
            return [(self.mode_at_level("c", 0),)]
        return []

    def vacuum_energy(self) -> int:
        """|θ⟩ 相对 |0⟩ 的 L0 能量 θ(θ−1)/2 − 1"""
        return self.theta * (self.theta - 1) // 2 - 1


class VirasoroModule(VermaTypeModule):
    """Virasoro Verma 模"""

    variant = ModuleVariant.VIRASORO

    def __init__(self, spec: ModuleSpec):
        super().__init__(spec, VirasoroAlgebra(spec.central_charge))

    def role(self, m: GeneratorMode) -> ModeRole:
        if m.index == 0:
            return ModeRole.CARTAN
        return ModeRole.ANNIHILATE if m.index > 0 else ModeRole.CREATE

    def cartan_value(self, m: GeneratorMode) -> RatFun:
        return self.spec.delta


_MODULE_CLASSES = {
    ModuleVariant.SL2_VERMA: SL2VermaModule,
    ModuleVariant.RELAXED: RelaxedModule,
    ModuleVariant.TOPOLOGICAL: TopologicalModule,
    ModuleVariant.MASSIVE: MassiveModule,
    ModuleVariant.FOCK: FockModule,
    ModuleVariant.GHOST: GhostModule,
    ModuleVariant.VIRASORO: VirasoroModule,
}


@lru_cache(maxsize=256)
def build_module(spec: ModuleSpec) -> VermaTypeModule:
    """模工厂 (同一 spec 复用缓存的模实例)"""
    return _MODULE_CLASSES[spec.variant](spec)


class StateVector:
    """模中的态: PBW 单项式到系数的映射"""

    __slots__ = ("module", "terms")

    def __init__(self, module: VermaTypeModule, terms: Optional[Mapping[Word, RatFun]] = None):
        self.module = module
        self.terms: Terms = {w: c for w, c in (terms or {}).items() if not c.is_zero}

    @classmethod
    def from_word(cls, module: VermaTypeModule, word: Sequence[GeneratorMode], coeff: RatFun = ONE) -> "StateVector":
        """把任意次序的模词作用在最高权向量上"""
        return module.apply_word(word, module.vacuum()).scale(coeff)

    @property
    def spec(self) -> ModuleSpec:
        return self.module.spec

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> RatFun:
        return self.terms.get(word, ZERO)

    def scale(self, factor: RatFun) -> "StateVector":
        if factor.is_zero:
            return StateVector(self.module)
        return StateVector(self.module, {w: c * factor for w, c in self.terms.items()})

    def __add__(self, other: "StateVector") -> "StateVector":
        terms = dict(self.terms)
        _accumulate(terms, other.terms, ONE)
        return StateVector(self.module, terms)

    def __sub__(self, other: "StateVector") -> "StateVector":
        terms = dict(self.terms)
        _accumulate(terms, other.terms, -ONE)
        return StateVector(self.module, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.module.spec == other.module.spec and (self - other).is_zero

    def __hash__(self) -> int:
        return hash((self.module.spec, frozenset(self.terms.items())))

    def bigrades(self) -> List[Bigrade]:
        return sorted({self.module.word_bigrade(w) for w in self.terms})

    @property
    def bigrade(self) -> Optional[Bigrade]:
        """齐次态的双分次; 零态或非齐次态为 None"""
        grades = self.bigrades()
        return grades[0] if len(grades) == 1 else None

    @property
    def max_level(self) -> int:
        return max((self.module.word_bigrade(w).level for w in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple[Word, RatFun]]:
        return sorted(self.terms.items(), key=lambda item: self.module.word_key(item[0]))

    def to_json(self) -> List[Dict[str, str]]:
        return [{"monomial": f"{word_text(w)} v" if w else "v", "coeff": str(c)} for w, c in self.sorted_terms()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            mono = f"{word_text(w)} v" if w else "v"
            if c == ONE:
                pieces.append(mono)
            elif c == -ONE:
                pieces.append(f"-{mono}")
            else:
                coeff = str(c)
                pieces.append(f"({coeff})*{mono}" if " " in coeff else f"{coeff}*{mono}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"StateVector({self})"


def build_basis(spec: ModuleSpec, bigrade: Bigrade, max_level: Optional[int] = None) -> List[Word]:
    """双分次分量的完整 PBW 基"""
    if max_level is not None and bigrade.level > max_level:
        raise TruncationError(f"能级 {bigrade.level} 超出截断 {max_level}")
    return build_module(spec).basis(bigrade)


def act(m: GeneratorMode, state: StateVector) -> StateVector:
    return state.module.act(m, state)


# 最高权条件


class ConditionKind(str, Enum):
    SL2_VERMA = "SL2Verma"
    RELAXED = "Relaxed"
    TOPOLOGICAL = "Topological"
    MASSIVE = "Massive"
    VIRASORO = "Virasoro"


@dataclass(frozen=True)
class HWCondition:
    """一组 (扭曲) 最高权湮灭条件"""
    kind: ConditionKind
    theta: int = 0

    def lower_bounds(self) -> Dict[str, int]:
        """每个生成元开始湮灭的最小指标"""
        theta = self.theta
        if self.kind is ConditionKind.SL2_VERMA:
            return {"J-": 1 - theta, "J0": 1, "J+": theta}
        if self.kind is ConditionKind.RELAXED:
            return {"J-": 1 - theta, "J0": 1, "J+": theta + 1}
        if self.kind is ConditionKind.TOPOLOGICAL:
            return {"L": 1, "H": 1, "Q": -theta, "G": theta}
        if self.kind is ConditionKind.MASSIVE:
            return {"L": 1, "H": 1, "Q": 1 - theta, "G": theta}
        return {"T": 1}

    def annihilates(self, m: GeneratorMode) -> bool:
        bound = self.lower_bounds().get(m.symbol)
        return bound is not None and m.index >= bound

    def annihilators(self, family_mode: Callable[[str, int], GeneratorMode], horizon: Callable[[str], int]) -> List[GeneratorMode]:
        """截断范围内需要检查的湮灭模 (按符号次序, 指标升序)"""
        modes = []
        for symbol, bound in self.lower_bounds().items():
            for index in range(bound, horizon(symbol) + 1):
                modes.append(family_mode(symbol, index))
        return modes

    def flowed(self, theta: int) -> "HWCondition":
        return HWCondition(self.kind, self.theta + theta)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.theta})"


@dataclass
class HWCheck:
    passed: bool
    witness: Optional[GeneratorMode] = None

    def __bool__(self) -> bool:
        return self.passed


def condition_annihilators(module: VermaTypeModule, condition: HWCondition, level: int) -> List[GeneratorMode]:
    return condition.annihilators(module.algebra.mode, lambda s: module.max_index(s, level))


def check_hw(state: StateVector, condition: HWCondition) -> HWCheck:
    """态是否被条件中的每个湮灭模杀死; 失败时给出第一个见证模"""
    module = state.module
    for m in condition_annihilators(module, condition, state.max_level):
        if not module.act(m, state).is_zero:
            return HWCheck(False, m)
    return HWCheck(True)


def operator_kernel(
    basis: Sequence[object],
    operators: Iterable[object],
    apply: Callable[[object, object], Mapping[object, RatFun]],
) -> List[List[RatFun]]:
    """堆叠算子矩阵的零空间: 行是 (算子, 目标基元), 列是源基元"""
    rows: List[List[RatFun]] = []
    for op in operators:
        images = [apply(op, b) for b in basis]
        targets: Dict[object, None] = {}
        for image in images:
            for key in image:
                targets.setdefault(key, None)
        for key in targets:
            rows.append([image.get(key, ZERO) for image in images])
    if not rows:
        return [[ONE if i == j else ZERO for i in range(len(basis))] for j in range(len(basis))]
    return nullspace(rows, len(basis))


def annihilation_kernel(module: VermaTypeModule, bigrade: Bigrade, condition: HWCondition) -> List[StateVector]:
    """双分次分量中满足条件的态空间的基"""
    basis = module.basis(bigrade)
    if not basis:
        return []
    ops = condition_annihilators(module, condition, bigrade.level)
    vectors = operator_kernel(basis, ops, lambda op, w: module.act_on_word(op, w))
    logger.debug(f"{module.spec.describe()} {bigrade} {condition}: dim {len(basis)}, kernel {len(vectors)}")
    states = []
    for vec in vectors:
        states.append(normalize_state(StateVector(module, dict(zip(basis, vec)))))
    return states


def normalize_state(state: StateVector) -> StateVector:
    """首个 (PBW 字典序) 非零系数归一为 1"""
    if state.is_zero:
        return state
    word, coeff = state.sorted_terms()[0]
    return state.scale(ONE / coeff)


# Gram 矩阵与 relaxed 极值态模方


_ADJOINT = {"J+": "J-", "J-": "J+", "J0": "J0"}


def adjoint_mode(m: GeneratorMode) -> GeneratorMode:
    """(J±_n)† = J∓_{−n}, (J0_n)† = J0_{−n}"""
    if m.algebra is not AlgebraFamily.SL2:
        raise ModuleSpecError(f"{m} 没有定义反变共轭")
    return GeneratorMode(AlgebraFamily.SL2, _ADJOINT[m.symbol], -m.index)


@dataclass
class GramMatrix:
    bigrade: Bigrade
    basis: List[Word]
    entries: List[List[RatFun]] = field(default_factory=list)

    def is_symmetric(self) -> bool:
        n = len(self.basis)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n))


def contravariant_pairing(module: VermaTypeModule, left: Word, right: Word) -> RatFun:
    state = StateVector(module, {right: ONE})
    for m in left:
        state = module.act(adjoint_mode(m), state)
    return state.coefficient(())


def gram_matrix(spec: ModuleSpec, bigrade: Bigrade) -> GramMatrix:
    """sl(2) Verma / relaxed 模的反变形式矩阵"""
    if spec.variant not in (ModuleVariant.SL2_VERMA, ModuleVariant.RELAXED):
        raise ModuleSpecError(f"{spec.variant.value} 模没有反变形式")
    module = build_module(spec)
    basis = module.basis(bigrade)
    entries = [[contravariant_pairing(module, bi, bj) for bj in basis] for bi in basis]
    return GramMatrix(bigrade, basis, entries)


def relaxed_extremal_norm(j: RatFun, lam: RatFun, n: int) -> RatFun:
    """极值态 |n⟩ 模方的闭式乘积"""
    result = ONE
    if n > 0:
        for i in range(n):
            result = result * (lam - 2 * i * j - i * (i + 1))
    elif n < 0:
        for i in range(-n):
            result = result * (lam + 2 * (i + 1) * j - i * (i + 1))
    return result


# Sugawara 零模


def sugawara_dimension(j: RatFun, lam: RatFun, k: RatFun) -> RatFun:
    return (j * (j + 1) + lam) / (k + 2)


def sugawara_l0(state: StateVector) -> StateVector:
    """未扭曲 sl(2) 模上的 Sugawara L0"""
    module = state.module
    if module.spec.variant not in (ModuleVariant.SL2_VERMA, ModuleVariant.RELAXED) or module.theta != 0:
        raise ModuleSpecError("Sugawara L0 只对 θ = 0 的 sl(2) 模实现")
    mode = module.algebra.mode
    half = ONE / 2
    total = module.apply_word([mode("J0", 0), mode("J0", 0)], state)
    total = total + module.apply_word([mode("J+", 0), mode("J-", 0)], state).scale(half)
    total = total + module.apply_word([mode("J-", 0), mode("J+", 0)], state).scale(half)
    for n in range(1, state.max_level + 1):
        total = total + module.apply_word([mode("J0", -n), mode("J0", n)], state).scale(RatFun(2))
        total = total + module.apply_word([mode("J+", -n), mode("J-", n)], state)
        total = total + module.apply_word([mode("J-", -n), mode("J+", n)], state)
    return total.scale(ONE / (module.spec.k + 2))


# 范畴判据


class CriterionKind(str, Enum):
    RELAXED_SL2 = "relaxed-sl2"
    TOPOLOGICAL_PARABOLA = "topological-parabola"
    MASSIVE_LINE = "massive-line"


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDETERMINED = "undetermined"


@dataclass
class CriterionResult:
    verdict: Verdict
    witness: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.HOLDS


def _branch_modes(module: VermaTypeModule, which: CriterionKind, n: int) -> Tuple[Iterator[GeneratorMode], Iterator[GeneratorMode]]:
    mode = module.algebra.mode
    if which is CriterionKind.RELAXED_SL2:
        return (mode("J+", n) for _ in count()), (mode("J-", -n) for _ in count())
    first_g = -n - 1 if which is CriterionKind.TOPOLOGICAL_PARABOLA else -n
    return (mode("Q", n - i) for i in count()), (mode("G", first_g - i) for i in count())


def _run_branch(state: StateVector, modes: Iterator[GeneratorMode], horizon: int, max_steps: int) -> Tuple[bool, int]:
    """返回 (是否在截断内变为零, 存活步数)"""
    module = state.module
    current = state
    for step in range(max_steps):
        m = next(modes)
        if current.max_level + module.mode_level(m) > horizon:
            return False, step
        current = module.act(m, current)
        if current.is_zero:
            return True, step
    return False, max_steps


def classify_criterion(
    state: StateVector,
    which: CriterionKind,
    horizon: int = 8,
    escape_depth: int = 2,
) -> CriterionResult:
    """在截断内检验态的终止性判据"""
    module = state.module
    family = AlgebraFamily.SL2 if which is CriterionKind.RELAXED_SL2 else AlgebraFamily.N2
    if module.algebra.family is not family:
        raise ModuleSpecError(f"判据 {which.value} 不适用于 {module.spec.describe()}")
    if state.is_zero:
        return CriterionResult(Verdict.HOLDS, detail="零态")
    reach = state.max_level + 2 + abs(module.theta)
    # 荷为 −c 的 Verma 态要 c + 1 步零模才能回到零
    charge_span = max(abs(module.word_bigrade(w).charge) for w in state.terms)
    max_steps = horizon + 2 + charge_span
    undetermined: Optional[int] = None
    for n in range(-reach, reach + 1):
        first, second = _branch_modes(module, which, n)
        cut_a, steps_a = _run_branch(state, first, horizon, max_steps)
        if cut_a:
            continue
        cut_b, steps_b = _run_branch(state, second, horizon, max_steps)
        if cut_b:
            continue
        if steps_a >= escape_depth and steps_b >= escape_depth:
            return CriterionResult(Verdict.FAILS, n, f"n={n}: 两支分别存活 {steps_a}, {steps_b} 步")
        if undetermined is None:
            undetermined = n
    if undetermined is not None:
        return CriterionResult(Verdict.UNDETERMINED, undetermined, f"n={undetermined}: 截断内无法判定")
    return CriterionResult(Verdict.HOLDS)
