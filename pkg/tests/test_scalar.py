"""
Q(t) 标量与精确线性代数测试
"""

import random
from fractions import Fraction

import pytest

from src.core.exceptions import DivisionByZeroError, ParseError, PoleError
from src.core.linalg import nullspace, rank
from src.core.scalar import RatFun, random_ratfun, to_rational


def test_constants_format_as_fractions():
    """常数按 p/q 输出"""
    assert str(RatFun(Fraction(3, 6))) == "1/2"
    assert str(RatFun(-4)) == "-4"
    assert str(RatFun("6/8")) == "3/4"


def test_polynomial_format(t):
    assert str(t - 2) == "t - 2"
    assert str((t - 2) / t) == "(t - 2)/t"


def test_field_arithmetic(t):
    """域运算: 约分后相等"""
    f = (t * t - 1) / (t - 1)
    assert f == t + 1
    assert (1 / t) * t == 1
    assert (t + 1) - (t + 1) == 0
    assert not ((t + 1) - (t + 1))


def test_equality_between_constant_and_function(t):
    assert RatFun(2) == 2
    assert t != 2
    assert hash(RatFun(Fraction(1, 2))) == hash(RatFun("1/2"))


def test_from_expr_matches_arithmetic(t):
    assert RatFun.from_expr("2/t - 1") == 2 / t - 1
    assert RatFun.from_expr("3*(t-2)/t") == 3 * (t - 2) / t


def test_specialize(t):
    f = (t - 2) / t
    assert f.specialize(4) == Fraction(1, 2)
    assert RatFun(5).specialize(0) == 5


def test_specialize_at_pole_reports_denominator(t):
    """在极点处求值报告分母"""
    with pytest.raises(PoleError) as excinfo:
        (1 / (t - 1)).specialize(1)
    assert excinfo.value.denominator == "t - 1"


def test_division_by_zero():
    with pytest.raises(DivisionByZeroError):
        RatFun(1) / RatFun(0)


def test_to_rational_rejects_garbage():
    with pytest.raises(ParseError):
        to_rational("one half")


def test_random_field_identities():
    """随机元素满足分配律"""
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = (random_ratfun(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c


def test_rank_and_nullspace_over_constants():
    rows = [
        [RatFun(1), RatFun(2), RatFun(3)],
        [RatFun(2), RatFun(4), RatFun(6)],
    ]
    assert rank(rows, 3) == 1
    kernel = nullspace(rows, 3)
    assert len(kernel) == 2
    for vector in kernel:
        for row in rows:
            assert sum((a * b for a, b in zip(row, vector)), RatFun(0)) == 0


def test_rank_over_function_field(t):
    """t 为未定元时的秩不在特殊点退化"""
    rows = [
        [t, RatFun(1)],
        [RatFun(1), t],
    ]
    assert rank(rows, 2) == 2
    # t = 1 处行列式为零
    assert rank([[RatFun(1), RatFun(1)], [RatFun(1), RatFun(1)]], 2) == 1


def test_nullspace_with_parameter(t):
    rows = [[t - 2, RatFun(1)]]
    (vector,) = nullspace(rows, 2)
    assert vector[1] == 1
    assert vector[0] == -1 / (t - 2)
