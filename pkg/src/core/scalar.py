"""
精确系数: 有理数 (Fraction) 与形式参数 t 的单变量有理函数域 Q(t)

RatFun 对常数走 Fraction 快速路径, 非常数时包装 sympy 的 FracElement。
"""

import random
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.fields import field

from .exceptions import DivisionByZeroError, ParseError, PoleError

# Q(t) 与其多项式环 Q[t]
T_FIELD, _T_GEN = field("t", QQ)
POLY_RING = T_FIELD.ring
T_SYMBOL = sympy.Symbol("t")

Rational = Fraction
ScalarLike = Union["RatFun", Fraction, int, str]


def _qq(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


def _fraction(coeff: Any) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def to_rational(value: Union[int, Fraction, str]) -> Fraction:
    """解析 "p/q" 形式的精确有理数"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"无法解析有理数: {value!r} (应为 p/q)")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _poly_coeffs(poly: Any) -> List[Fraction]:
    """多项式系数 (t 的升幂)"""
    if not poly:
        return [Fraction(0)]
    coeffs = [Fraction(0)] * (poly.degree() + 1)
    for (n,), c in poly.terms():
        coeffs[n] = _fraction(c)
    return coeffs


def _horner(coeffs: Sequence[Fraction], t0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t0 + c
    return acc


def _format_poly(coeffs: Sequence[Fraction]) -> Tuple[str, int]:
    """降幂格式化, 返回 (文本, 非零项数)"""
    pieces: List[Tuple[bool, str]] = []
    for n in range(len(coeffs) - 1, -1, -1):
        c = coeffs[n]
        if c == 0:
            continue
        mag = abs(c)
        if n == 0:
            body = format_rational(mag)
        else:
            power = "t" if n == 1 else f"t^{n}"
            body = power if mag == 1 else f"{format_rational(mag)}*{power}"
        pieces.append((c < 0, body))
    if not pieces:
        return "0", 0
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        text += (" - " if negative else " + ") + body
    return text, len(pieces)


class RatFun:
    """Q(t) 中的元素, 不可变"""

    __slots__ = ("_const", "_frac", "_hash")

    def __init__(self, value: Union[int, Fraction, str, "RatFun"] = 0):
        self._hash = None
        if isinstance(value, RatFun):
            self._const, self._frac = value._const, value._frac
        elif isinstance(value, (int, Fraction)):
            self._const, self._frac = Fraction(value), None
        elif isinstance(value, str):
            self._const, self._frac = to_rational(value), None
        else:
            raise TypeError(f"不支持的系数类型: {type(value).__name__}")

    @classmethod
    def _wrap(cls, frac: Any) -> "RatFun":
        obj = cls.__new__(cls)
        obj._hash = None
        if frac.numer.is_ground and frac.denom.is_ground:
            obj._const = _fraction(frac.numer.LC) / _fraction(frac.denom.LC) if frac.numer else Fraction(0)
            obj._frac = None
        else:
            obj._const, obj._frac = None, frac
        return obj

    @classmethod
    def t(cls) -> "RatFun":
        return cls._wrap(_T_GEN)

    @classmethod
    def from_expr(cls, text: str) -> "RatFun":
        """解析 t 的有理表达式, 例如 "2/t - 1" """
        try:
            expr = sympy.sympify(text, locals={"t": T_SYMBOL})
            return cls._wrap(T_FIELD.from_expr(expr))
        except (sympy.SympifyError, ValueError, TypeError, SyntaxError) as e:
            raise ParseError(f"无法解析 t 的有理函数: {text!r} ({e})")

    @classmethod
    def from_coeffs(cls, num: Sequence[Fraction], den: Sequence[Fraction]) -> "RatFun":
        numer = POLY_RING.from_list([_qq(Fraction(c)) for c in reversed(list(num))])
        denom = POLY_RING.from_list([_qq(Fraction(c)) for c in reversed(list(den))])
        if not denom:
            raise DivisionByZeroError("分母为零多项式")
        return cls._wrap(T_FIELD.new(numer, denom))

    @classmethod
    def from_json(cls, data: Dict[str, List[str]]) -> "RatFun":
        try:
            return cls.from_coeffs([to_rational(c) for c in data["num"]], [to_rational(c) for c in data["den"]])
        except (KeyError, TypeError):
            raise ParseError(f"无效的 RatFun JSON: {data!r}")

    @classmethod
    def from_poly(cls, poly: Any) -> "RatFun":
        """由 Q[t] 中的 PolyElement 构造"""
        return cls._wrap(T_FIELD.new(poly))

    def _as_frac(self) -> Any:
        if self._frac is not None:
            return self._frac
        return T_FIELD.ground_new(_qq(self._const))

    def poly_pair(self) -> Tuple[Any, Any]:
        """(分子, 分母) 作为 Q[t] 的 PolyElement"""
        if self._frac is None:
            return POLY_RING.ground_new(_qq(self._const)), POLY_RING.one
        return self._frac.numer, self._frac.denom

    @property
    def is_constant(self) -> bool:
        return self._frac is None

    @property
    def is_zero(self) -> bool:
        return self._frac is None and self._const == 0

    def constant_value(self) -> Fraction:
        if self._frac is not None:
            raise ValueError(f"{self} 不是常数")
        return self._const

    def canonical(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """分母首一的规范形式 (系数升幂)"""
        if self._frac is None:
            return (self._const,), (Fraction(1),)
        num = _poly_coeffs(self._frac.numer)
        den = _poly_coeffs(self._frac.denom)
        lead = den[-1]
        return tuple(c / lead for c in num), tuple(c / lead for c in den)

    def numerator(self) -> "RatFun":
        num, _ = self.canonical()
        return RatFun.from_coeffs(num, [Fraction(1)])

    def denominator(self) -> "RatFun":
        _, den = self.canonical()
        return RatFun.from_coeffs(den, [Fraction(1)])

    def specialize(self, t0: Union[Fraction, int, str]) -> Fraction:
        """在 t = t0 处求值"""
        t0 = to_rational(t0)
        if self._frac is None:
            return self._const
        num, den = self.canonical()
        d = _horner(den, t0)
        if d == 0:
            den_text, _ = _format_poly(den)
            raise PoleError(
                f"分母 {den_text} 在 t = {format_rational(t0)} 处为零",
                denominator=den_text,
                point=format_rational(t0),
            )
        return _horner(num, t0) / d

    # 算术

    def _binary(self, other: Any, const_op: Any, frac_op: Any) -> "RatFun":
        other = as_ratfun(other)
        if self._frac is None and other._frac is None:
            result = RatFun.__new__(RatFun)
            result._hash = None
            result._const, result._frac = const_op(self._const, other._const), None
            return result
        return RatFun._wrap(frac_op(self._as_frac(), other._as_frac()))

    def __add__(self, other: Any) -> "RatFun":
        return self._binary(other, lambda a, b: a + b, lambda a, b: a + b)

    def __radd__(self, other: Any) -> "RatFun":
        return as_ratfun(other) + self

    def __sub__(self, other: Any) -> "RatFun":
        return self._binary(other, lambda a, b: a - b, lambda a, b: a - b)

    def __rsub__(self, other: Any) -> "RatFun":
        return as_ratfun(other) - self

    def __mul__(self, other: Any) -> "RatFun":
        return self._binary(other, lambda a, b: a * b, lambda a, b: a * b)

    def __rmul__(self, other: Any) -> "RatFun":
        return as_ratfun(other) * self

    def __truediv__(self, other: Any) -> "RatFun":
        other = as_ratfun(other)
        if other.is_zero:
            raise DivisionByZeroError(f"除以零: ({self}) / 0")
        return self._binary(other, lambda a, b: a / b, lambda a, b: a / b)

    def __rtruediv__(self, other: Any) -> "RatFun":
        return as_ratfun(other) / self

    def __neg__(self) -> "RatFun":
        if self._frac is None:
            return RatFun(-self._const)
        return RatFun._wrap(-self._frac)

    def __pow__(self, exponent: int) -> "RatFun":
        if exponent < 0 and self.is_zero:
            raise DivisionByZeroError("零的负幂")
        if self._frac is None:
            return RatFun(self._const ** exponent)
        return RatFun._wrap(self._frac ** exponent)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other: Any) -> bool:
        try:
            other = as_ratfun(other)
        except TypeError:
            return NotImplemented
        if self._frac is None and other._frac is None:
            return self._const == other._const
        if (self._frac is None) != (other._frac is None):
            return False
        return not (self._frac - other._frac)

    def __ne__(self, other: Any) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._const) if self._frac is None else hash(self.canonical())
        return self._hash

    def __str__(self) -> str:
        if self._frac is None:
            return format_rational(self._const)
        num, den = self.canonical()
        num_text, num_terms = _format_poly(num)
        if den == (Fraction(1),):
            return num_text
        den_text, den_terms = _format_poly(den)
        if num_terms > 1:
            num_text = f"({num_text})"
        if den_terms > 1 or "*" in den_text or "^" in den_text:
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def to_json(self) -> Dict[str, List[str]]:
        num, den = self.canonical()
        return {"num": [format_rational(c) for c in num], "den": [format_rational(c) for c in den]}


ZERO = RatFun(0)
ONE = RatFun(1)


def as_ratfun(value: Any) -> RatFun:
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFun(value)
    raise TypeError(f"无法转换为 RatFun: {value!r}")


def specialize(f: RatFun, t0: Union[Fraction, int, str]) -> Fraction:
    return f.specialize(t0)


def random_rational(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    """小高度随机有理数, 用于属性检查"""
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def random_ratfun(rng: random.Random, degree: int = 2, bound: int = 5) -> RatFun:
    num = [random_rational(rng, bound) for _ in range(rng.randint(0, degree) + 1)]
    den = [random_rational(rng, bound) for _ in range(rng.randint(0, degree) + 1)]
    if all(c == 0 for c in den):
        den[-1] = Fraction(1)
    return RatFun.from_coeffs(num, den)
