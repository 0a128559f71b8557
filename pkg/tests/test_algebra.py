"""
模代数、PBW 排序与谱流测试
"""

import random

import pytest

from src.core.algebra import (
    AffineSL2Algebra,
    AlgebraFamily,
    GeneratorMode,
    GhostAlgebra,
    HeisenbergAlgebra,
    ModePolynomial,
    N2Algebra,
    VirasoroAlgebra,
    check_structure,
    commutator,
    flow_text,
    mode,
    parse_mode,
    pbw_normalize,
    spectral_flow,
)
from src.core.exceptions import AlgebraError, ParseError
from src.core.scalar import RatFun


def _poly(*terms):
    result = ModePolynomial()
    for coeff, modes in terms:
        result = result + ModePolynomial({tuple(modes): RatFun(coeff) if not isinstance(coeff, RatFun) else coeff})
    return result


def test_mode_text_and_parsing():
    """模文本: 字母结尾的符号省略下划线"""
    assert str(mode("H", 0)) == "H0"
    assert str(mode("Q", -1)) == "Q-1"
    assert str(mode("J+", 1)) == "J+_1"
    assert str(mode("J0", 0)) == "J0_0"
    assert parse_mode("J+_1") == mode("J+", 1)
    assert parse_mode("G_-1") == mode("G", -1)
    assert parse_mode("L-2") == mode("L", -2)


def test_bad_modes_rejected():
    with pytest.raises(ParseError):
        parse_mode("X3")
    with pytest.raises(AlgebraError):
        GeneratorMode(AlgebraFamily.N2, "J+", 0)


def test_charges():
    assert mode("G", 0).charge == 1
    assert mode("Q", 0).charge == -1
    assert mode("J-", 2).charge == -1
    assert mode("L", 1).charge == 0


def test_virasoro_subalgebra(t):
    n2 = N2Algebra.from_t(t)
    assert n2.bracket(mode("L", 1), mode("L", -1)) == _poly((2, [mode("L", 0)]))
    assert n2.bracket(mode("L", 2), mode("L", -2)) == _poly((4, [mode("L", 0)]))


def test_g_q_anticommutator(t):
    """{G_1, Q_-1} = 2L_0 + 2H_0 + 2C/3"""
    n2 = N2Algebra.from_t(t)
    central = 3 * (t - 2) / t
    expected = _poly((2, [mode("L", 0)]), (2, [mode("H", 0)])) + ModePolynomial.constant(2 * central / 3)
    assert n2.bracket(mode("G", 1), mode("Q", -1)) == expected
    # 反对易子对称
    assert n2.bracket(mode("Q", -1), mode("G", 1)) == expected


def test_h_h_central_term(t):
    n2 = N2Algebra.from_t(t)
    assert n2.bracket(mode("H", 2), mode("H", -2)).central_part == 2 * (t - 2) / t
    assert n2.bracket(mode("H", 2), mode("H", -1)).is_zero


def test_sl2_brackets(t):
    sl2 = AffineSL2Algebra.from_t(t)
    expected = _poly((2, [mode("J0", 0)])) + ModePolynomial.constant(t - 2)
    assert sl2.bracket(mode("J+", 1), mode("J-", -1)) == expected
    assert sl2.bracket(mode("J0", 0), mode("J-", 3)) == _poly((-1, [mode("J-", 3)]))


def test_cross_family_brackets():
    """标量场与 N2 / sl(2) 对易, 其它交叉括号不支持"""
    assert commutator(mode("a", 1), mode("L", -1)).is_zero
    assert commutator(mode("J+", 0), mode("a", 0)).is_zero
    with pytest.raises(AlgebraError):
        commutator(mode("L", 1), mode("J+", 0))


def test_pbw_normalize_reorders_with_bracket():
    """L_1 L_-1 = L_-1 L_1 + 2 L_0"""
    result = pbw_normalize([mode("L", 1), mode("L", -1)])
    expected = _poly((1, [mode("L", -1), mode("L", 1)]), (2, [mode("L", 0)]))
    assert result == expected


def test_fermion_square_vanishes():
    assert pbw_normalize([mode("Q", -1), mode("Q", -1)]).is_zero
    assert pbw_normalize([mode("b", -1), mode("b", -1)]).is_zero


def test_fermion_swap_sign():
    """有序后费米子交换取负号"""
    result = pbw_normalize([mode("b", 1), mode("c", -2)])
    assert result == _poly((-1, [mode("c", -2), mode("b", 1)]))


def test_ghost_anticommutator():
    ghost = GhostAlgebra()
    assert ghost.bracket(mode("b", 2), mode("c", -2)).central_part == 1
    assert ghost.bracket(mode("b", 2), mode("c", -1)).is_zero


def test_pbw_normalize_rejects_mixed_words():
    with pytest.raises(AlgebraError):
        pbw_normalize([mode("L", 1), mode("a", -1)])


def test_flow_identity_and_simple_images():
    assert str(flow_text(AlgebraFamily.N2, 0, "H0")) == "H0"
    assert str(flow_text(AlgebraFamily.N2, 1, "G0")) == "G1"
    assert str(flow_text(AlgebraFamily.N2, 1, "Q0")) == "Q-1"
    assert str(flow_text(AlgebraFamily.SL2, 2, "J+_0")) == "J+_2"
    assert str(flow_text(AlgebraFamily.SL2, 2, "J-_0")) == "J-_-2"


def test_flow_of_l0_picks_up_central_shift(t):
    """U_1 L_0 = L_0 + H_0 + C/3"""
    image = spectral_flow(AlgebraFamily.N2, 1, ModePolynomial.of(mode("L", 0)))
    expected = _poly((1, [mode("L", 0)]), (1, [mode("H", 0)])) + ModePolynomial.constant((t - 2) / t)
    assert image == expected


def test_flow_of_j0(t):
    image = spectral_flow(AlgebraFamily.SL2, 1, ModePolynomial.of(mode("J0", 0)))
    assert image == _poly((1, [mode("J0", 0)])) + ModePolynomial.constant((t - 2) / 2)


def test_flow_composition():
    """U_a U_b = U_{a+b}"""
    for symbol in ("L", "H", "Q", "G"):
        p = ModePolynomial.of(mode(symbol, 0))
        twice = spectral_flow(AlgebraFamily.N2, 2, spectral_flow(AlgebraFamily.N2, -3, p))
        assert twice == spectral_flow(AlgebraFamily.N2, -1, p)


def test_flow_requires_n2_or_sl2():
    with pytest.raises(AlgebraError):
        spectral_flow(AlgebraFamily.VIRASORO, 1, ModePolynomial.of(mode("T", 0)))
    with pytest.raises(ParseError):
        flow_text(AlgebraFamily.N2, 1, "J+_0")


@pytest.mark.parametrize(
    "algebra",
    [
        N2Algebra.from_t(RatFun.t()),
        AffineSL2Algebra.from_t(RatFun.t()),
        VirasoroAlgebra.matter(RatFun.t()),
        HeisenbergAlgebra(),
        GhostAlgebra(),
    ],
    ids=lambda a: a.family.value,
)
def test_structure_checks_pass(algebra):
    """反对称、Jacobi 与谱流律在随机抽样上成立"""
    result = check_structure(algebra, random.Random(f"20240127:{algebra.family.value}"), samples=60, flow_window=2)
    assert result.passed, result.witnesses(5)
    assert result.checks == 120
