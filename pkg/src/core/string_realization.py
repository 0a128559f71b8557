"""
玻色弦实现: 物质 (Virasoro Verma) ⊕ Liouville 标量 ⊕ bc 鬼场上的 N=2 生成元

态空间 = GhostModule(α) ⊗ Fock(度规 −1/(2t), a_0 = 动量) ⊗ Virasoro(Δ, 13 − 6/t − 6t),
基元键为 (鬼场词, Liouville 词, 物质词)。N=2 生成元是复合场, 其模由 fields.ModeEvaluator 计算。
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import ModePolynomial, N2Algebra, Word, word_text
from .diagrams import DiagramEdge, DiagramGraph, DiagramNode
from .exceptions import ModuleSpecError
from .fields import Atom, FieldSum, ModeEvaluator, d, field_sum, no
from .free_field import ClosureFailure
from .modules import (
    Bigrade,
    ConditionKind,
    GhostModule,
    HWCheck,
    HWCondition,
    ModuleSpec,
    StateVector,
    build_module,
)
from .scalar import ONE, ZERO, RatFun
from .singular import kac_dimension
from ..utils.logger import get_logger

logger = get_logger(__name__)

StringKey = Tuple[Word, Word, Word]
VACUUM_KEY: StringKey = ((), (), ())
N2_SYMBOLS = ("L", "H", "Q", "G")


def liouville_metric(t: RatFun) -> RatFun:
    return -ONE / (2 * t)


def matter_central_charge(t: RatFun) -> RatFun:
    return 13 - 6 / t - 6 * t


def n2_fields(t: RatFun) -> Dict[str, FieldSum]:
    """N=2 生成元的复合场表达式"""
    a, T, b, c = Atom("a"), Atom("T"), Atom("b"), Atom("c")
    return {
        "L": field_sum(
            (ONE, T),
            (-t, no(a, a)),
            (-(1 + t), d("a")),
            (-1, no(d("b"), c)),
            (-2, no(b, d("c"))),
        ),
        "H": field_sum((2, a), (1, no(b, c))),
        "G": field_sum((1, b)),
        "Q": field_sum(
            (-2, no(b, d("c"), c)),
            (-2 * t, no(a, a, c)),
            (4, no(a, d("c"))),
            (2, no(T, c)),
            (2 - 2 * t, no(d("a"), c)),
            (1 - 2 / t, d("c", 2)),
        ),
    }


def _add_into(target: Dict[StringKey, RatFun], key: StringKey, value: RatFun) -> None:
    total = target.get(key, ZERO) + value
    if total.is_zero:
        target.pop(key, None)
    else:
        target[key] = total


class StringSpace:
    """固定 (t, Δ, Liouville 动量, 鬼场 picture) 的弦态空间"""

    def __init__(self, t: RatFun, delta: RatFun, momentum: RatFun, picture: int, margin: int = 0):
        self.t = t
        self.delta = delta
        self.momentum = momentum
        self.picture = picture
        self.ghost: GhostModule = build_module(ModuleSpec.ghost(picture))  # type: ignore[assignment]
        self.liouville = build_module(ModuleSpec.fock(liouville_metric(t), momentum))
        self.matter = build_module(ModuleSpec.virasoro(delta, matter_central_charge(t)))
        self.n2 = N2Algebra.from_t(t)
        self.fields = n2_fields(t)
        # 鬼场能量 (相对 |0⟩) 不低于 −1
        self.floor = -1 - self.ghost.vacuum_energy()
        self.evaluator = ModeEvaluator(self._atom_action, self.headroom, margin)

    def describe(self) -> str:
        return f"string(t={self.t}, Δ={self.delta}, p={self.momentum}, picture={self.picture})"

    @staticmethod
    def energy(key: StringKey) -> int:
        """相对本空间真空的 L0 能量"""
        return -sum(m.index for word in key for m in word)

    def headroom(self, key: StringKey) -> int:
        """在该基元上可能非零作用的最大模指标"""
        return self.energy(key) - self.floor

    def _atom_action(self, symbol: str, n: int, key: StringKey) -> Dict[StringKey, RatFun]:
        ghost, liouville, matter = key
        if symbol in ("b", "c"):
            image = self.ghost.act_on_word(self.ghost.algebra.mode(symbol, n), ghost)
            return {(w, liouville, matter): c for w, c in image.items()}
        if symbol == "a":
            image = self.liouville.act_on_word(self.liouville.algebra.mode("a", n), liouville)
            return {(ghost, w, matter): c for w, c in image.items()}
        image = self.matter.act_on_word(self.matter.algebra.mode("T", n), matter)
        return {(ghost, liouville, w): c for w, c in image.items()}

    def vacuum(self) -> "StringState":
        return StringState(self, {VACUUM_KEY: ONE})

    def state(self, key: StringKey) -> "StringState":
        return StringState(self, {key: ONE})

    def n2_mode(self, symbol: str, n: int, state: "StringState") -> "StringState":
        if symbol not in self.fields:
            raise ModuleSpecError(f"未知的 N=2 生成元: {symbol}")
        return StringState(self, self.evaluator.apply(self.fields[symbol], n, state.terms))

    def keys_up_to(self, max_level: int) -> Iterator[StringKey]:
        """总 (扭曲) 能级 <= max_level 的全部基元"""
        for total in range(max_level + 1):
            for lg in range(total + 1):
                ghosts = [w for q in range(-lg - 1, lg + 1) for w in self.ghost.basis(Bigrade(q, lg))]
                for ll in range(total - lg + 1):
                    lm = total - lg - ll
                    for g in ghosts:
                        for lw in self.liouville.basis(Bigrade(0, ll)):
                            for mw in self.matter.basis(Bigrade(0, lm)):
                                yield (g, lw, mw)


@lru_cache(maxsize=64)
def string_space(t: RatFun, delta: RatFun, momentum: RatFun, picture: int, margin: int = 0) -> StringSpace:
    return StringSpace(t, delta, momentum, picture, margin)


class StringState:
    """弦态空间中的态"""

    __slots__ = ("space", "terms")

    def __init__(self, space: StringSpace, terms: Optional[Dict[StringKey, RatFun]] = None):
        self.space = space
        self.terms: Dict[StringKey, RatFun] = {k: v for k, v in (terms or {}).items() if not v.is_zero}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor: RatFun) -> "StringState":
        return StringState(self.space, {k: v * factor for k, v in self.terms.items()})

    def __add__(self, other: "StringState") -> "StringState":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(terms, k, v)
        return StringState(self.space, terms)

    def __sub__(self, other: "StringState") -> "StringState":
        return self + other.scale(-ONE)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StringState):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @property
    def horizon(self) -> int:
        return max((self.space.headroom(k) for k in self.terms), default=0)

    def monomial(self, key: StringKey) -> str:
        ghost, liouville, matter = key
        space = self.space
        parts = [
            f"{word_text(ghost) + ' ' if ghost else ''}|{space.picture}>gh",
            f"{word_text(liouville) + ' ' if liouville else ''}|p={space.momentum}>",
            f"{word_text(matter) + ' ' if matter else ''}|Δ={space.delta}>",
        ]
        return " ⊗ ".join(parts)

    def to_json(self) -> List[Dict[str, str]]:
        items = sorted(self.terms.items(), key=lambda item: (self.space.energy(item[0]), str(item[0])))
        return [{"monomial": self.monomial(k), "coeff": str(c)} for k, c in items]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({e['coeff']}) {e['monomial']}" for e in self.to_json())


def n2_mode(symbol: str, n: int, state: StringState) -> StringState:
    """复合场 N=2 生成元的模作用"""
    return state.space.n2_mode(symbol, n, state)


def apply_n2_poly(poly: ModePolynomial, state: StringState) -> StringState:
    result = StringState(state.space)
    for word, coeff in poly.items():
        image = state
        for m in reversed(word):
            image = n2_mode(m.symbol, m.index, image)
        result = result + image.scale(coeff)
    return result


def check_string_hw(state: StringState, condition: HWCondition) -> HWCheck:
    """弦态是否满足一组 N=2 最高权条件"""
    space = state.space
    horizon = state.horizon
    for m in condition.annihilators(space.n2.mode, lambda s: horizon):
        if not n2_mode(m.symbol, m.index, state).is_zero:
            return HWCheck(False, m)
    return HWCheck(True)


def check_n2_closure(space: StringSpace, max_level: int = 2, mode_span: int = 2) -> List[ClosureFailure]:
    """N=2 (反) 对易关系在截断内全部基态上逐一检验"""
    failures: List[ClosureFailure] = []
    indices = range(-mode_span, mode_span + 1)
    keys = list(space.keys_up_to(max_level))
    logger.debug(f"N=2 closure on {space.describe()}: {len(keys)} basis states")
    for key in keys:
        state = space.state(key)
        label = state.monomial(key)
        for i, x in enumerate(N2_SYMBOLS):
            for y in N2_SYMBOLS[i:]:
                for a in indices:
                    for b in indices:
                        xa, yb = space.n2.mode(x, a), space.n2.mode(y, b)
                        first = n2_mode(x, a, n2_mode(y, b, state))
                        second = n2_mode(y, b, n2_mode(x, a, state))
                        lhs = first + second if (xa.is_fermionic and yb.is_fermionic) else first - second
                        if lhs != apply_n2_poly(space.n2.bracket(xa, yb), state):
                            failures.append(ClosureFailure(str(xa), str(yb), label))
    logger.info(f"N=2 closure on {space.describe()}: {len(failures)} failures")
    return failures


# 鬼场 picture


def ghost_vacuum(theta: int) -> StateVector:
    """picture θ 的鬼场真空, 写在 picture −1 (即 |0⟩) 的 Fock 空间中"""
    module = build_module(ModuleSpec.ghost(-1))
    mode = module.algebra.mode
    if theta >= 0:
        # c ∂c ··· ∂^θ c, 其中 ∂^k c(0) = k! c_{1−k}
        factors = [(factorial(k), mode("c", 1 - k)) for k in range(theta + 1)]
    elif theta <= -2:
        # b ∂b ··· ∂^{−θ−2} b, 其中 ∂^k b(0) = k! b_{−2−k}
        factors = [(factorial(k), mode("b", -2 - k)) for k in range(-theta - 1)]
    else:
        factors = []
    coeff = ONE
    for scale, _ in factors:
        coeff = coeff * scale
    return StateVector.from_word(module, [m for _, m in factors], coeff)


def ghost_picture_check(theta: int) -> bool:
    """ghost_vacuum(θ) 被 b_{≥θ}, c_{≥1−θ} 湮灭, 且能量为 θ(θ−1)/2 − 1"""
    state = ghost_vacuum(theta)
    if state.is_zero:
        return False
    module = state.module
    energies = {-sum(m.index for m in w) for w in state.terms}
    expected = build_module(ModuleSpec.ghost(theta)).vacuum_energy()  # type: ignore[attr-defined]
    if energies != {expected}:
        return False
    # picture −1 中能量 e 的态被指标 > e + 1 的模湮灭
    top = expected + 1
    for symbol, bound in (("b", theta), ("c", 1 - theta)):
        for index in range(bound, top + 1):
            if not module.act(module.algebra.mode(symbol, index), state).is_zero:
                logger.debug(f"ghost picture {theta}: {symbol}_{index} does not annihilate")
                return False
    return True


# 缀饰与伪 massive 标签


def dressing_dimension(h: RatFun, t: RatFun) -> RatFun:
    """Δ(h, t) = (2 − 2h − t + h²t)/4"""
    return (2 - 2 * h - t + h * h * t) / 4


def alternate_dressing(h: RatFun, t: RatFun) -> RatFun:
    """另一种缀饰 h ↦ 2/t − h, Δ(h, t) 不变"""
    return 2 / t - h


def dressing_momentum(h: RatFun, t: RatFun, theta: int) -> RatFun:
    """Liouville 零模 a_0 = ½ + h/2 + θ/t"""
    return (1 + h) / 2 + RatFun(theta) / t


@dataclass(frozen=True)
class PseudomassiveLabel:
    """伪 massive 态标签 (h, ℓ, t; θ): 与扭曲 massive 模最高权向量同样的条件与本征值"""
    h: RatFun
    l: RatFun
    t: RatFun
    theta: int

    def spec(self) -> ModuleSpec:
        return ModuleSpec.massive(self.h, self.l, self.t, self.theta)

    def eigenvalues(self) -> Tuple[RatFun, RatFun]:
        """(H_0, L_0)"""
        module = build_module(self.spec())
        return module.h0_value(), module.l0_value()  # type: ignore[attr-defined]

    def to_json(self) -> Dict[str, object]:
        return {"h": str(self.h), "l": str(self.l), "t": str(self.t), "theta": self.theta}

    def __str__(self) -> str:
        return f"|{self.h}, {self.l}, {self.t}; {self.theta}>*"


def label_eigenvalues(state: StringState) -> Optional[Tuple[RatFun, RatFun]]:
    """态的 (H_0, L_0) 本征值; 不是本征态时为 None"""
    if state.is_zero:
        return None
    key, coeff = next(iter(state.terms.items()))
    values = []
    for symbol in ("H", "L"):
        image = n2_mode(symbol, 0, state)
        value = image.terms.get(key, ZERO) / coeff
        if image != state.scale(value):
            return None
        values.append(value)
    return values[0], values[1]


def matches_label(state: StringState, label: PseudomassiveLabel) -> bool:
    """条件 Massive(θ) 成立且本征值与标签一致"""
    if not check_string_hw(state, HWCondition(ConditionKind.MASSIVE, label.theta)):
        return False
    return label_eigenvalues(state) == label.eigenvalues()


def dress(delta: RatFun, h: RatFun, t: RatFun, theta: int) -> Tuple[StringState, PseudomassiveLabel]:
    """物质主态 |Δ⟩ 缀饰成 N=2 伪 massive 最高权态"""
    space = string_space(t, delta, dressing_momentum(h, t, theta), theta)
    label = PseudomassiveLabel(h, delta - dressing_dimension(h, t), t, theta)
    return space.vacuum(), label


def d_state(h: RatFun, t: RatFun, theta: int, alpha: int) -> PseudomassiveLabel:
    """拓扑退化态沿极值图走到 picture α 时的标签"""
    shift = theta - alpha
    return PseudomassiveLabel(
        h + 2 * RatFun(shift) / t,
        shift * (RatFun(alpha - theta + 1) - h * t) / t,
        t,
        alpha,
    )


def d_string_state(h: RatFun, t: RatFun, theta: int, alpha: int) -> StringState:
    """Δ = Δ(h, t), Liouville 动量固定, 鬼场 picture α 的弦态"""
    space = string_space(t, dressing_dimension(h, t), dressing_momentum(h, t, theta), alpha)
    return space.vacuum()


def _extremal_step(state: StringState, alpha: int, upward: bool) -> Tuple[str, StringState]:
    if upward:
        m = state.space.n2.mode("Q", -alpha)
    else:
        m = state.space.n2.mode("G", alpha - 1)
    return str(m), n2_mode(m.symbol, m.index, state)


def d_diagram(h: RatFun, t: RatFun, theta: int, alpha_window: Tuple[int, int]) -> DiagramGraph:
    """D 态极值图: 节点是各 picture 的弦态, 边是移动到相邻 picture 的 N=2 模"""
    lo, hi = alpha_window
    base_energy = build_module(ModuleSpec.ghost(theta)).vacuum_energy()  # type: ignore[attr-defined]
    graph = DiagramGraph(name=f"D(h={h}, t={t}, theta={theta})")
    states: Dict[int, StringState] = {}
    for alpha in range(lo, hi + 1):
        label = d_state(h, t, theta, alpha)
        state = d_string_state(h, t, theta, alpha)
        states[alpha] = state
        massive = HWCondition(ConditionKind.MASSIVE, alpha)
        topological = HWCondition(ConditionKind.TOPOLOGICAL, alpha)
        conditions = [c for c in (massive, topological) if check_string_hw(state, c)]
        verified = massive in conditions and label_eigenvalues(state) == label.eigenvalues()
        ghost_energy = state.space.ghost.vacuum_energy()
        node = DiagramNode(
            key=f"a{alpha}",
            charge=theta - alpha,
            level=ghost_energy - base_energy + theta * (theta - alpha),
            conditions=[str(c) for c in conditions],
            flag=str(topological) if topological in conditions else None,
            extra={"alpha": str(alpha), "h": str(label.h), "l": str(label.l), "verified": str(verified).lower()},
        )
        graph.nodes.append(node)

    for alpha in range(lo, hi + 1):
        for target, upward in ((alpha + 1, True), (alpha - 1, False)):
            if target not in states:
                continue
            mode_text, image = _extremal_step(states[alpha], alpha, upward)
            if matches_label(image, d_state(h, t, theta, target)):
                graph.edges.append(DiagramEdge(f"a{alpha}", f"a{target}", mode_text))
            else:
                logger.warning(f"D-diagram step {mode_text} from picture {alpha} does not reach label {target}")
    return graph


# 关键恒等式与 Virasoro 约化


def _locus_h(sign: str, r: int, s: int, t: RatFun) -> RatFun:
    """h^∓(r, s, t), 允许 s = 0"""
    if sign == "-":
        return RatFun(r + 1) / t - s
    return RatFun(s - 1) - RatFun(r - 1) / t


def key_identity(r: int, s: int, theta1: int, theta2: int, t: RatFun) -> bool:
    """D(h⁻(r,s,t), t, θ1, α) = D(h⁺(r,s+1,t), t, θ2, α) 当且仅当 r + θ1 − θ2 = s·t"""
    if s < 0:
        raise ModuleSpecError(f"s 必须非负: {s}")
    return (r + theta1 - theta2 - s * t).is_zero


def key_identity_direct(
    r: int, s: int, theta1: int, theta2: int, t: RatFun, alphas: Sequence[int] = (-1, 0, 1)
) -> bool:
    """直接比较两侧 D 态标签"""
    minus = _locus_h("-", r, s, t)
    plus = _locus_h("+", r, s + 1, t)
    return all(d_state(minus, t, theta1, a) == d_state(plus, t, theta2, a) for a in alphas)


@dataclass
class ReductionRow:
    sign: str
    r: int
    s: int
    dressing: RatFun
    kac: RatFun
    kac_s: int
    equal: bool = field(init=False)

    def __post_init__(self) -> None:
        self.equal = self.dressing == self.kac

    def to_json(self) -> Dict[str, object]:
        return {
            "sign": self.sign,
            "r": self.r,
            "s": self.s,
            "dressing_dimension": str(self.dressing),
            "kac_dimension": str(self.kac),
            "kac_s": self.kac_s,
            "equal": self.equal,
        }


def reduction_table(max_r: int, max_s: int, t: RatFun) -> List[ReductionRow]:
    """拓扑轨迹上的缀饰维数与 Virasoro Kac 维数: E⁻(r,s) ↔ Δ_{r,s}, E⁺(r,s) ↔ Δ_{r,s−1}"""
    rows = []
    for sign in ("-", "+"):
        for r in range(1, max_r + 1):
            for s in range(1, max_s + 1):
                kac_s = s if sign == "-" else s - 1
                rows.append(
                    ReductionRow(
                        sign, r, s, dressing_dimension(_locus_h(sign, r, s, t), t), kac_dimension(r, kac_s, t), kac_s
                    )
                )
    return rows
