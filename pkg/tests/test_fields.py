"""
场表达式的模展开
"""

import pytest

from src.core.exceptions import AlgebraError
from src.core.fields import Atom, ModeEvaluator, d, derivative_factor, field_sum, no
from src.core.free_field import XI
from src.core.scalar import ONE, RatFun


def _fock_evaluator():
    return ModeEvaluator(lambda symbol, n, key: XI.oscillator(n, key), lambda key: sum(key[1]))


def test_atom_weights_and_text():
    assert Atom("a").weight == 1
    assert d("c").weight == 0
    assert str(no(Atom("b"), d("c"))) == "b∂c"
    assert str(d("a", 2)) == "∂^2∂φ"
    with pytest.raises(AlgebraError):
        Atom("x")


def test_derivative_factor():
    """(∂X)_n = −(n + h) X_n"""
    assert derivative_factor(d("c"), 3) == -2
    assert derivative_factor(d("a", 2), 0) == 2
    assert derivative_factor(Atom("T"), 5) == 1


def test_field_sum_requires_uniform_weight():
    field_sum((1, no(Atom("a"), Atom("a"))), (RatFun(2), d("a")))
    with pytest.raises(AlgebraError):
        field_sum((1, Atom("a")), (1, Atom("T")))


def test_normal_ordered_square_zero_mode():
    """:aa:_0 在动量 p 的真空上给 p²"""
    evaluator = _fock_evaluator()
    stress = field_sum((RatFun(-1) / 2, no(Atom("a"), Atom("a"))))
    assert evaluator.apply(no(Atom("a"), Atom("a")), 0, {(2, ()): ONE}) == {(2, ()): RatFun(4)}
    assert evaluator.apply(stress, 0, {(2, ()): ONE}) == {(2, ()): RatFun(-2)}


def test_normal_ordered_square_lowering_mode():
    """:aa:_{−1} |p> = 2p a_{−1} |p>"""
    evaluator = _fock_evaluator()
    result = evaluator.apply(no(Atom("a"), Atom("a")), -1, {(-1, ()): ONE})
    assert result == {(-1, (1,)): RatFun(2)}


def test_wider_summation_window_adds_only_zeros():
    """放宽正规乘积的求和范围不改变结果"""
    narrow = _fock_evaluator()
    wide = ModeEvaluator(lambda symbol, n, key: XI.oscillator(n, key), lambda key: sum(key[1]), margin=3)
    cubic = no(Atom("a"), Atom("a"), Atom("a"))
    for key in [(1, ()), (-2, (1,)), (0, (2, 1))]:
        for n in range(-2, 3):
            for expr in (no(Atom("a"), Atom("a")), cubic):
                assert wide.apply_key(expr, n, key) == narrow.apply_key(expr, n, key)
