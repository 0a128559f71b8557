"""
五种代数的结构常数表: N=2 (拓扑扭曲形式)、affine sl(2)、Heisenberg 标量、Virasoro、bc 鬼场

提供分次括号、PBW 正规排序和谱流变换。
"""

import random
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .exceptions import AlgebraError, ParseError
from .scalar import ONE, ZERO, RatFun


class AlgebraFamily(str, Enum):
    """代数族"""
    N2 = "N2"
    SL2 = "SL2"
    SCALAR = "Scalar"
    VIRASORO = "Virasoro"
    GHOST = "Ghost"


class Parity(str, Enum):
    """宇称"""
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"


# PBW 符号次序 (同能级内)
SYMBOL_ORDER: Dict[AlgebraFamily, Tuple[str, ...]] = {
    AlgebraFamily.N2: ("L", "H", "Q", "G"),
    AlgebraFamily.SL2: ("J-", "J0", "J+"),
    AlgebraFamily.SCALAR: ("a",),
    AlgebraFamily.VIRASORO: ("T",),
    AlgebraFamily.GHOST: ("b", "c"),
}

FERMIONIC_SYMBOLS = frozenset({"G", "Q", "b", "c"})

# 相对 H0 / J0_0 的荷
SYMBOL_CHARGE: Dict[str, int] = {"G": 1, "Q": -1, "J+": 1, "J-": -1, "b": 1, "c": -1}

_SYMBOL_FAMILY: Dict[str, AlgebraFamily] = {
    symbol: family for family, symbols in SYMBOL_ORDER.items() for symbol in symbols
}

# 互相对易的交叉代数对
_COMMUTING_FAMILIES = (
    frozenset({AlgebraFamily.SCALAR, AlgebraFamily.SL2}),
    frozenset({AlgebraFamily.SCALAR, AlgebraFamily.N2}),
)

_MODE_PATTERN = re.compile(r"^(J\+|J-|J−|J0|L|H|G|Q|T|a|b|c)_?(-?\d+)$")


@dataclass(frozen=True)
class GeneratorMode:
    """一个生成元的一个模"""
    algebra: AlgebraFamily
    symbol: str
    index: int

    def __post_init__(self) -> None:
        if _SYMBOL_FAMILY.get(self.symbol) is not self.algebra:
            raise AlgebraError(f"代数 {self.algebra.value} 中没有生成元 {self.symbol}")

    @property
    def parity(self) -> Parity:
        return Parity.FERMIONIC if self.symbol in FERMIONIC_SYMBOLS else Parity.BOSONIC

    @property
    def is_fermionic(self) -> bool:
        return self.symbol in FERMIONIC_SYMBOLS

    @property
    def charge(self) -> int:
        return SYMBOL_CHARGE.get(self.symbol, 0)

    @property
    def symbol_rank(self) -> int:
        return SYMBOL_ORDER[self.algebra].index(self.symbol)

    def shifted(self, index: int) -> "GeneratorMode":
        return GeneratorMode(self.algebra, self.symbol, index)

    def __str__(self) -> str:
        sep = "_" if self.symbol[-1] in "+-0123456789" else ""
        return f"{self.symbol}{sep}{self.index}"


Word = Tuple[GeneratorMode, ...]


def mode(symbol: str, index: int) -> GeneratorMode:
    """按符号构造模, 代数族由符号推出"""
    family = _SYMBOL_FAMILY.get(symbol)
    if family is None:
        raise AlgebraError(f"未知生成元: {symbol}")
    return GeneratorMode(family, symbol, index)


def parse_mode(text: str) -> GeneratorMode:
    """解析 "H0", "L-1", "J+_1", "J0_0", "G_-1" 等模文本"""
    match = _MODE_PATTERN.match(text.strip())
    if not match:
        raise ParseError(f"无法解析模: {text!r}")
    symbol = match.group(1).replace("−", "-")
    return mode(symbol, int(match.group(2)))


def word_text(word: Word) -> str:
    return " ".join(str(m) for m in word) if word else "1"


def word_charge(word: Word) -> int:
    return sum(m.charge for m in word)


def word_level(word: Word) -> int:
    """未扭曲能级 (各模指标取负之和)"""
    return -sum(m.index for m in word)


class ModePolynomial:
    """模词的线性组合; 空词是单位元 (中心部分)"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, RatFun]] = None):
        self.terms: Dict[Word, RatFun] = {w: c for w, c in (terms or {}).items() if not c.is_zero}

    @classmethod
    def constant(cls, value: RatFun) -> "ModePolynomial":
        return cls({(): value})

    @classmethod
    def of(cls, m: GeneratorMode, coeff: RatFun = ONE) -> "ModePolynomial":
        return cls({(m,): coeff})

    @property
    def central_part(self) -> RatFun:
        return self.terms.get((), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[Word, RatFun]]:
        return iter(self.terms.items())

    def families(self) -> set:
        return {m.algebra for w in self.terms for m in w}

    def __add__(self, other: "ModePolynomial") -> "ModePolynomial":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return ModePolynomial(terms)

    def __sub__(self, other: "ModePolynomial") -> "ModePolynomial":
        return self + other.scale(-ONE)

    def __neg__(self) -> "ModePolynomial":
        return self.scale(-ONE)

    def scale(self, factor: RatFun) -> "ModePolynomial":
        if factor.is_zero:
            return ModePolynomial()
        return ModePolynomial({w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other: "ModePolynomial") -> "ModePolynomial":
        """词的拼接 (不做排序)"""
        terms: Dict[Word, RatFun] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, ZERO) + c1 * c2
        return ModePolynomial(terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModePolynomial):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Tuple[Word, RatFun]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), [(m.symbol, m.index) for m in item[0]]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            if not w:
                pieces.append(str(c))
            elif c == ONE:
                pieces.append(word_text(w))
            elif c == -ONE:
                pieces.append(f"-{word_text(w)}")
            else:
                coeff = str(c)
                if " " in coeff:
                    coeff = f"({coeff})"
                pieces.append(f"{coeff}*{word_text(w)}")
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self) -> str:
        return f"ModePolynomial({self})"


BracketRule = Callable[[int, int], ModePolynomial]


def _delta(m: int, n: int) -> bool:
    return m + n == 0


class LieSuperalgebra:
    """由结构常数表给出的 Lie 超代数"""

    family: AlgebraFamily

    def __init__(self) -> None:
        self._table: Dict[Tuple[str, str], BracketRule] = {}
        self._normal_cache: Dict[Word, ModePolynomial] = {}

    @property
    def symbols(self) -> Tuple[str, ...]:
        return SYMBOL_ORDER[self.family]

    def mode(self, symbol: str, index: int) -> GeneratorMode:
        return GeneratorMode(self.family, symbol, index)

    def _m(self, symbol: str, index: int, coeff: RatFun = ONE) -> ModePolynomial:
        return ModePolynomial.of(self.mode(symbol, index), coeff)

    def bracket(self, a: GeneratorMode, b: GeneratorMode) -> ModePolynomial:
        """分次括号 [a,b] (两者均为费米子时为反对易子)"""
        if a.algebra is not self.family or b.algebra is not self.family:
            raise AlgebraError(f"{a} 与 {b} 不属于 {self.family.value}")
        rule = self._table.get((a.symbol, b.symbol))
        if rule is not None:
            return rule(a.index, b.index)
        rule = self._table.get((b.symbol, a.symbol))
        if rule is None:
            return ModePolynomial()
        sign = ONE if (a.is_fermionic and b.is_fermionic) else -ONE
        return rule(b.index, a.index).scale(sign)

    def bracket_poly(self, p: ModePolynomial, q: ModePolynomial) -> ModePolynomial:
        """线性多项式 (词长 <= 1) 的双线性括号; 中心项括号为零"""
        result = ModePolynomial()
        for wp, cp in p.items():
            for wq, cq in q.items():
                if not wp or not wq:
                    continue
                if len(wp) != 1 or len(wq) != 1:
                    raise AlgebraError("bracket_poly 只接受线性多项式")
                result = result + self.bracket(wp[0], wq[0]).scale(cp * cq)
        return result

    def sort_key(self, m: GeneratorMode) -> Tuple[int, int, int]:
        """能级降序, 再按符号次序, 再按指标"""
        return (m.index, m.symbol_rank, m.index)

    def normal_order(self, word: Iterable[GeneratorMode]) -> ModePolynomial:
        """在包络代数中把词重写为 PBW 有序词的组合"""
        word = tuple(word)
        cached = self._normal_cache.get(word)
        if cached is not None:
            return cached
        result = self._normal_order(word)
        self._normal_cache[word] = result
        return result

    def _normal_order(self, word: Word) -> ModePolynomial:
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            head, tail = word[:i], word[i + 2:]
            if x == y and x.is_fermionic:
                # x x = ½[x,x]
                result = ModePolynomial()
                for w, c in self.bracket(x, x).items():
                    result = result + self.normal_order(head + w + tail).scale(c / 2)
                return result
            if self.sort_key(x) > self.sort_key(y):
                sign = -ONE if (x.is_fermionic and y.is_fermionic) else ONE
                result = self.normal_order(head + (y, x) + tail).scale(sign)
                for w, c in self.bracket(x, y).items():
                    result = result + self.normal_order(head + w + tail).scale(c)
                return result
        return ModePolynomial({word: ONE})

    def flow_mode(self, m: GeneratorMode, theta: int) -> ModePolynomial:
        raise AlgebraError(f"{self.family.value} 没有谱流")

    def random_mode(self, rng: random.Random, span: int = 4) -> GeneratorMode:
        return self.mode(rng.choice(self.symbols), rng.randint(-span, span))

    def jacobi_defect(self, a: GeneratorMode, b: GeneratorMode, c: GeneratorMode) -> ModePolynomial:
        """[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]"""
        single = ModePolynomial.of
        sign = -ONE if (a.is_fermionic and b.is_fermionic) else ONE
        lhs = self.bracket_poly(single(a), self.bracket(b, c))
        rhs1 = self.bracket_poly(self.bracket(a, b), single(c))
        rhs2 = self.bracket_poly(single(b), self.bracket(a, c)).scale(sign)
        return lhs - rhs1 - rhs2

    def antisymmetry_defect(self, a: GeneratorMode, b: GeneratorMode) -> ModePolynomial:
        sign = ONE if (a.is_fermionic and b.is_fermionic) else -ONE
        return self.bracket(a, b) - self.bracket(b, a).scale(sign)


class N2Algebra(LieSuperalgebra):
    """拓扑扭曲的 N=2 超共形代数, 中心荷 C"""

    family = AlgebraFamily.N2

    def __init__(self, central_charge: RatFun):
        super().__init__()
        self.central_charge = central_charge
        c3 = central_charge / 3
        c6 = central_charge / 6
        m_ = self._m
        self._table = {
            ("L", "L"): lambda m, n: m_("L", m + n, RatFun(m - n)),
            ("H", "H"): lambda m, n: ModePolynomial.constant(c3 * m) if _delta(m, n) else ModePolynomial(),
            ("L", "G"): lambda m, n: m_("G", m + n, RatFun(m - n)),
            ("H", "G"): lambda m, n: m_("G", m + n),
            ("L", "Q"): lambda m, n: m_("Q", m + n, RatFun(-n)),
            ("H", "Q"): lambda m, n: m_("Q", m + n, -ONE),
            ("L", "H"): lambda m, n: m_("H", m + n, RatFun(-n))
            + (ModePolynomial.constant(c6 * (m * m + m)) if _delta(m, n) else ModePolynomial()),
            ("G", "Q"): lambda m, n: m_("L", m + n, RatFun(2))
            + m_("H", m + n, RatFun(-2 * n))
            + (ModePolynomial.constant(c3 * (m * m + m)) if _delta(m, n) else ModePolynomial()),
        }

    @classmethod
    def from_t(cls, t: RatFun) -> "N2Algebra":
        return cls(3 * (t - 2) / t)

    def flow_mode(self, m: GeneratorMode, theta: int) -> ModePolynomial:
        """U_θ 作用于单个模"""
        n = m.index
        if m.symbol == "L":
            result = self._m("L", n) + self._m("H", n, RatFun(theta))
            if n == 0:
                result = result + ModePolynomial.constant(self.central_charge * (theta * theta + theta) / 6)
            return result
        if m.symbol == "H":
            result = self._m("H", n)
            if n == 0:
                result = result + ModePolynomial.constant(self.central_charge * theta / 3)
            return result
        if m.symbol == "Q":
            return self._m("Q", n - theta)
        return self._m("G", n + theta)


class AffineSL2Algebra(LieSuperalgebra):
    """affine sl(2), 水平 k"""

    family = AlgebraFamily.SL2

    def __init__(self, level: RatFun):
        super().__init__()
        self.level = level
        k = level
        m_ = self._m
        self._table = {
            ("J0", "J0"): lambda m, n: ModePolynomial.constant(k * m / 2) if _delta(m, n) else ModePolynomial(),
            ("J0", "J+"): lambda m, n: m_("J+", m + n),
            ("J0", "J-"): lambda m, n: m_("J-", m + n, -ONE),
            ("J+", "J-"): lambda m, n: m_("J0", m + n, RatFun(2))
            + (ModePolynomial.constant(k * m) if _delta(m, n) else ModePolynomial()),
        }

    @classmethod
    def from_t(cls, t: RatFun) -> "AffineSL2Algebra":
        return cls(t - 2)

    def flow_mode(self, m: GeneratorMode, theta: int) -> ModePolynomial:
        n = m.index
        if m.symbol == "J+":
            return self._m("J+", n + theta)
        if m.symbol == "J-":
            return self._m("J-", n - theta)
        result = self._m("J0", n)
        if n == 0:
            result = result + ModePolynomial.constant(self.level * theta / 2)
        return result


class HeisenbergAlgebra(LieSuperalgebra):
    """标量场振子 [a_m, a_n] = metric m δ"""

    family = AlgebraFamily.SCALAR

    def __init__(self, metric: RatFun = RatFun(-1)):
        super().__init__()
        self.metric = metric
        self._table = {
            ("a", "a"): lambda m, n: ModePolynomial.constant(metric * m) if _delta(m, n) else ModePolynomial(),
        }


class VirasoroAlgebra(LieSuperalgebra):
    """Virasoro 代数, 生成元记作 T"""

    family = AlgebraFamily.VIRASORO

    def __init__(self, central_charge: RatFun):
        super().__init__()
        self.central_charge = central_charge
        c12 = central_charge / 12
        m_ = self._m
        self._table = {
            ("T", "T"): lambda m, n: m_("T", m + n, RatFun(m - n))
            + (ModePolynomial.constant(c12 * (m ** 3 - m)) if _delta(m, n) else ModePolynomial()),
        }

    @classmethod
    def matter(cls, t: RatFun) -> "VirasoroAlgebra":
        """物质中心荷 13 - 6/t - 6t"""
        return cls(13 - 6 / t - 6 * t)


class GhostAlgebra(LieSuperalgebra):
    """bc 鬼场 {b_m, c_n} = δ_{m+n,0}"""

    family = AlgebraFamily.GHOST

    def __init__(self) -> None:
        super().__init__()
        self._table = {
            ("b", "c"): lambda m, n: ModePolynomial.constant(ONE) if _delta(m, n) else ModePolynomial(),
        }


def default_algebra(family: AlgebraFamily, t: Optional[RatFun] = None) -> LieSuperalgebra:
    """各代数族的默认实例 (中心元取 t 的有理函数)"""
    t = t if t is not None else RatFun.t()
    if family is AlgebraFamily.N2:
        return N2Algebra.from_t(t)
    if family is AlgebraFamily.SL2:
        return AffineSL2Algebra.from_t(t)
    if family is AlgebraFamily.SCALAR:
        return HeisenbergAlgebra(RatFun(-1))
    if family is AlgebraFamily.VIRASORO:
        return VirasoroAlgebra.matter(t)
    return GhostAlgebra()


_DEFAULTS: Dict[AlgebraFamily, LieSuperalgebra] = {}


def _resolve(family: AlgebraFamily, algebra: Optional[LieSuperalgebra]) -> LieSuperalgebra:
    if algebra is None:
        algebra = _DEFAULTS.get(family)
        if algebra is None:
            algebra = _DEFAULTS[family] = default_algebra(family)
    if algebra.family is not family:
        raise AlgebraError(f"代数实例 {algebra.family.value} 与 {family.value} 不符")
    return algebra


def commutator(a: GeneratorMode, b: GeneratorMode, algebra: Optional[LieSuperalgebra] = None) -> ModePolynomial:
    """分次对易子 [a,b]"""
    if a.algebra is not b.algebra:
        if frozenset({a.algebra, b.algebra}) in _COMMUTING_FAMILIES:
            return ModePolynomial()
        raise AlgebraError(f"不支持的交叉代数括号: [{a}, {b}]")
    return _resolve(a.algebra, algebra).bracket(a, b)


def pbw_normalize(word: Iterable[GeneratorMode], algebra: Optional[LieSuperalgebra] = None) -> ModePolynomial:
    """PBW 正规排序"""
    word = tuple(word)
    if not word:
        return ModePolynomial.constant(ONE)
    families = {m.algebra for m in word}
    if len(families) != 1:
        raise AlgebraError(f"词跨越多个代数族: {word_text(word)}")
    return _resolve(word[0].algebra, algebra).normal_order(word)


def spectral_flow(
    family: AlgebraFamily,
    theta: int,
    p: ModePolynomial,
    algebra: Optional[LieSuperalgebra] = None,
) -> ModePolynomial:
    """谱流 U_θ 作用于多项式, 结果 PBW 排序"""
    if family not in (AlgebraFamily.N2, AlgebraFamily.SL2):
        raise AlgebraError(f"{family.value} 没有谱流")
    alg = _resolve(family, algebra)
    if p.families() - {family}:
        raise AlgebraError("多项式不属于指定代数")
    result = ModePolynomial()
    for word, coeff in p.items():
        image = ModePolynomial.constant(coeff)
        for m in word:
            image = image * alg.flow_mode(m, theta)
        for w, c in image.items():
            result = result + (alg.normal_order(w).scale(c) if w else ModePolynomial.constant(c))
    return result


def flow_text(family: AlgebraFamily, theta: int, text: str) -> ModePolynomial:
    """CLI 使用: 解析单个模并作用谱流"""
    m = parse_mode(text)
    if m.algebra is not family:
        raise ParseError(f"模 {text} 不属于 {family.value}")
    return spectral_flow(family, theta, ModePolynomial.of(m))


def generator_modes(algebra: LieSuperalgebra, span: int) -> List[GeneratorMode]:
    return [algebra.mode(s, n) for s in algebra.symbols for n in range(-span, span + 1)]


@dataclass
class StructureCheck:
    """随机抽样的结构检验结果, 失败项记录见证"""
    family: AlgebraFamily
    samples: int
    antisymmetry_failures: List[str]
    jacobi_failures: List[str]
    flow_failures: List[str]

    @property
    def checks(self) -> int:
        return 2 * self.samples

    @property
    def passed(self) -> bool:
        return not (self.antisymmetry_failures or self.jacobi_failures or self.flow_failures)

    def witnesses(self, limit: Optional[int] = None) -> List[str]:
        return (self.antisymmetry_failures + self.jacobi_failures + self.flow_failures)[:limit]


def check_structure(
    algebra: LieSuperalgebra,
    rng: random.Random,
    samples: int,
    flow_window: int = 3,
) -> StructureCheck:
    """分次反对称、Jacobi 恒等式, 以及 (N2/sl2) 谱流的自同构与复合律"""
    result = StructureCheck(algebra.family, samples, [], [], [])
    for _ in range(samples):
        a, b, c = (algebra.random_mode(rng) for _ in range(3))
        if not algebra.antisymmetry_defect(a, b).is_zero:
            result.antisymmetry_failures.append(f"[{a},{b}]")
        if not algebra.jacobi_defect(a, b, c).is_zero:
            result.jacobi_failures.append(f"({a},{b},{c})")
    if algebra.family not in (AlgebraFamily.N2, AlgebraFamily.SL2):
        return result
    single = ModePolynomial.of
    family = algebra.family
    for theta in range(-flow_window, flow_window + 1):
        for _ in range(max(1, samples // 20)):
            a, b = algebra.random_mode(rng), algebra.random_mode(rng)
            lhs = spectral_flow(family, theta, algebra.bracket(a, b), algebra)
            rhs = algebra.bracket_poly(
                spectral_flow(family, theta, single(a), algebra), spectral_flow(family, theta, single(b), algebra)
            )
            if lhs != rhs:
                result.flow_failures.append(f"U_{theta}[{a},{b}]")
            other = rng.randint(-flow_window, flow_window)
            twice = spectral_flow(family, other, spectral_flow(family, theta, single(a), algebra), algebra)
            if twice != spectral_flow(family, theta + other, single(a), algebra):
                result.flow_failures.append(f"U_{other}U_{theta} {a}")
    return result


__all__ = [
    "AlgebraFamily",
    "Parity",
    "GeneratorMode",
    "ModePolynomial",
    "LieSuperalgebra",
    "N2Algebra",
    "AffineSL2Algebra",
    "HeisenbergAlgebra",
    "VirasoroAlgebra",
    "GhostAlgebra",
    "Word",
    "commutator",
    "pbw_normalize",
    "spectral_flow",
    "flow_text",
    "default_algebra",
    "generator_modes",
    "StructureCheck",
    "check_structure",
    "mode",
    "parse_mode",
    "word_text",
    "word_charge",
    "word_level",
]
