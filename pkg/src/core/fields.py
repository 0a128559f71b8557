"""
场表达式及其模展开

原子场 ∂^k X (X ∈ {a = ∂φ, T, b, c}), 右嵌套正规乘积与线性组合;
模 n 的作用按正规乘积的标准双求和计算, 求和范围由态的能量上限截断。
"""

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Tuple, Union

from .exceptions import AlgebraError
from .scalar import ONE, ZERO, RatFun

ATOM_WEIGHTS: Dict[str, int] = {"a": 1, "T": 2, "b": 2, "c": -1}
FERMIONIC_ATOMS = frozenset({"b", "c"})


@dataclass(frozen=True)
class Atom:
    symbol: str
    derivatives: int = 0

    def __post_init__(self) -> None:
        if self.symbol not in ATOM_WEIGHTS:
            raise AlgebraError(f"未知的原子场: {self.symbol}")

    @property
    def weight(self) -> int:
        return ATOM_WEIGHTS[self.symbol] + self.derivatives

    @property
    def fermionic(self) -> bool:
        return self.symbol in FERMIONIC_ATOMS

    def __str__(self) -> str:
        name = "∂φ" if self.symbol == "a" else self.symbol
        if not self.derivatives:
            return name
        prefix = "∂" if self.derivatives == 1 else f"∂^{self.derivatives}"
        return f"{prefix}{name}"


@dataclass(frozen=True)
class Normal:
    """正规乘积 (left right)"""
    left: "FieldExpr"
    right: "FieldExpr"

    @property
    def weight(self) -> int:
        return self.left.weight + self.right.weight

    @property
    def fermionic(self) -> bool:
        return self.left.fermionic != self.right.fermionic

    def __str__(self) -> str:
        return f"{self.left}{self.right}"


FieldExpr = Union[Atom, Normal]


@dataclass(frozen=True)
class FieldSum:
    terms: Tuple[Tuple[RatFun, FieldExpr], ...]

    def __post_init__(self) -> None:
        weights = {f.weight for _, f in self.terms}
        if len(weights) > 1:
            raise AlgebraError(f"场的各项共形权不一致: {sorted(weights)}")

    @property
    def weight(self) -> int:
        return self.terms[0][1].weight

    def __str__(self) -> str:
        pieces = []
        for c, f in self.terms:
            pieces.append(str(f) if c == ONE else f"({c}){f}")
        return " + ".join(pieces)


def d(symbol: str, k: int = 1) -> Atom:
    return Atom(symbol, k)


def no(*factors: FieldExpr) -> FieldExpr:
    """右嵌套正规乘积 (A (B (C ...)))"""
    expr = factors[-1]
    for f in reversed(factors[:-1]):
        expr = Normal(f, expr)
    return expr


def field_sum(*terms: Tuple[Union[RatFun, int], FieldExpr]) -> FieldSum:
    return FieldSum(tuple((RatFun(c) if isinstance(c, int) else c, f) for c, f in terms))


def derivative_factor(atom: Atom, n: int) -> RatFun:
    """(∂^k X)_n = (−1)^k Π_{i<k}(n + h + i) X_n"""
    h = ATOM_WEIGHTS[atom.symbol]
    value = 1
    for i in range(atom.derivatives):
        value *= -(n + h + i)
    return RatFun(value)


Key = Hashable
Terms = Dict[Key, RatFun]


def _add_into(target: Terms, key: Key, value: RatFun) -> None:
    total = target.get(key, ZERO) + value
    if total.is_zero:
        target.pop(key, None)
    else:
        target[key] = total


class ModeEvaluator:
    """在给定表示上计算场的模

    atom_action(symbol, n, key) 给出原子模作用在基元上的结果;
    headroom(key) 给出该基元上可能非零作用的最大模指标;
    margin 把正规乘积的求和范围向两侧各放宽若干项, 多出的项必须为零。
    """

    def __init__(
        self,
        atom_action: Callable[[str, int, Key], Terms],
        headroom: Callable[[Key], int],
        margin: int = 0,
    ):
        self.atom_action = atom_action
        self.headroom = headroom
        self.margin = margin
        self._cache: Dict[Tuple[FieldExpr, int, Key], Terms] = {}

    def apply_key(self, expr: FieldExpr, n: int, key: Key) -> Terms:
        cache_key = (expr, n, key)
        cached = self._cache.get(cache_key)
        if cached is None:
            cached = self._compute(expr, n, key)
            self._cache[cache_key] = cached
        return cached

    def apply(self, expr: Union[FieldExpr, FieldSum], n: int, terms: Terms) -> Terms:
        result: Terms = {}
        if isinstance(expr, FieldSum):
            for coeff, f in expr.terms:
                for k, c in self.apply(f, n, terms).items():
                    _add_into(result, k, c * coeff)
            return result
        for key, c in terms.items():
            for k2, c2 in self.apply_key(expr, n, key).items():
                _add_into(result, k2, c * c2)
        return result

    def _compute(self, expr: FieldExpr, n: int, key: Key) -> Terms:
        if isinstance(expr, Atom):
            factor = derivative_factor(expr, n)
            if factor.is_zero:
                return {}
            return {k: c * factor for k, c in self.atom_action(expr.symbol, n, key).items()}

        left, right = expr.left, expr.right
        split = -left.weight
        head = self.headroom(key) + self.margin
        sign = -ONE if (left.fermionic and right.fermionic) else ONE
        source: Terms = {key: ONE}
        result: Terms = {}
        # Σ_{p ≤ −h_A} A_p B_{n−p}
        for p in range(n - head, split + 1):
            for k, c in self.apply(left, p, self.apply(right, n - p, source)).items():
                _add_into(result, k, c)
        # (−1)^{|A||B|} Σ_{p > −h_A} B_{n−p} A_p
        for p in range(split + 1, head + 1):
            for k, c in self.apply(right, n - p, self.apply(left, p, source)).items():
                _add_into(result, k, c * sign)
        return result
