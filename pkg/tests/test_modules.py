"""
Verma 型模: 基、作用、最高权条件、Gram 矩阵与判据
"""

from fractions import Fraction

import pytest

from src.core.algebra import mode
from src.core.exceptions import ModuleSpecError, TruncationError
from src.core.modules import (
    Bigrade,
    ConditionKind,
    CriterionKind,
    HWCondition,
    ModuleSpec,
    StateVector,
    Verdict,
    annihilation_kernel,
    build_basis,
    build_module,
    check_hw,
    classify_criterion,
    gram_matrix,
    relaxed_extremal_norm,
    sugawara_dimension,
    sugawara_l0,
)
from src.core.scalar import ONE, RatFun


def _words(basis):
    return [" ".join(str(m) for m in w) for w in basis]


def test_bigrade_rejects_negative_level():
    with pytest.raises(ValueError):
        Bigrade(0, -1)
    assert str(Bigrade(-1, 2)) == "(-1,2)"


def test_spec_validation(t):
    """缺参数、t = 0、k = −2 都是无效定义"""
    with pytest.raises(ModuleSpecError):
        ModuleSpec.topological(RatFun(1), RatFun(0))
    with pytest.raises(ModuleSpecError):
        ModuleSpec.sl2_verma(RatFun(0), RatFun(-2))
    with pytest.raises(ModuleSpecError):
        ModuleSpec(ModuleSpec.topological(RatFun(1), t).variant, h=RatFun(1))


def test_topological_basis(t):
    spec = ModuleSpec.topological(RatFun(Fraction(1, 3)), t)
    assert build_basis(spec, Bigrade(0, 0)) == [()]
    assert _words(build_basis(spec, Bigrade(0, 1))) == ["L-1", "H-1"]
    assert _words(build_basis(spec, Bigrade(-1, 1))) == ["Q-1"]
    assert _words(build_basis(spec, Bigrade(1, 1))) == ["G-1"]
    assert len(build_basis(spec, Bigrade(0, 2))) == 6
    assert build_basis(spec, Bigrade(2, 1)) == []


def test_massive_basis_has_level_zero_fermion(t):
    """massive 模在零能级多一个 Q 产生元"""
    spec = ModuleSpec.massive(RatFun(Fraction(1, 3)), RatFun(Fraction(1, 2)), t)
    assert _words(build_basis(spec, Bigrade(-1, 0))) == ["Q0"]
    assert _words(build_basis(spec, Bigrade(0, 1))) == ["L-1", "H-1", "G-1 Q0"]
    assert build_basis(spec, Bigrade(-2, 0)) == []


def test_sl2_and_relaxed_level_zero(t):
    verma = ModuleSpec.sl2_verma(RatFun(Fraction(1, 2)), t - 2)
    assert _words(build_basis(verma, Bigrade(-2, 0))) == ["J-_0 J-_0"]
    assert build_basis(verma, Bigrade(1, 0)) == []
    assert len(build_basis(verma, Bigrade(0, 1))) == 2
    relaxed = ModuleSpec.relaxed(RatFun(Fraction(1, 2)), RatFun(3), t - 2)
    assert _words(build_basis(relaxed, Bigrade(2, 0))) == ["J+_0 J+_0"]


def test_basis_truncation(t):
    spec = ModuleSpec.topological(RatFun(0), t)
    with pytest.raises(TruncationError):
        build_basis(spec, Bigrade(0, 4), max_level=3)


def test_cartan_values_after_flow(t):
    """θ 扭曲后的 H0 / J0 本征值"""
    module = build_module(ModuleSpec.topological(RatFun(1), t, theta=1))
    central = 3 * (t - 2) / t
    assert module.h0_value() == 1 - central / 3
    assert module.l0_value() == -(1 - central / 3) - central / 3
    sl2 = build_module(ModuleSpec.sl2_verma(RatFun(1), t - 2, theta=2))
    assert sl2.cartan_value(mode("J0", 0)) == 1 - (t - 2)


def test_action_on_vacuum(t):
    h = RatFun(Fraction(1, 3))
    module = build_module(ModuleSpec.topological(h, t))
    v = module.vacuum()
    assert module.act(mode("H", 0), v) == v.scale(h)
    assert module.act(mode("L", 0), v).is_zero
    assert module.act(mode("Q", 0), v).is_zero
    assert str(module.act(mode("Q", -1), v)) == "Q-1 v"


def test_g_on_q_state(t):
    """G_1 Q_-1 v = (2h + 2C/3) v"""
    h = RatFun(Fraction(1, 3))
    module = build_module(ModuleSpec.topological(h, t))
    state = StateVector.from_word(module, [mode("G", 1), mode("Q", -1)])
    assert state == module.vacuum().scale(2 * h + 2 * (t - 2) / t)


def test_state_json():
    module = build_module(ModuleSpec.topological(RatFun(0), RatFun(3)))
    state = StateVector.from_word(module, [mode("Q", -1)], RatFun(2))
    assert state.to_json() == [{"monomial": "Q-1 v", "coeff": "2"}]
    assert state.bigrade == Bigrade(-1, 1)


def test_hw_check_reports_witness(t):
    module = build_module(ModuleSpec.topological(RatFun(Fraction(1, 3)), t))
    state = StateVector.from_word(module, [mode("Q", -1)])
    result = check_hw(state, HWCondition(ConditionKind.TOPOLOGICAL, 1))
    assert not result
    assert result.witness == mode("G", 1)
    assert check_hw(module.vacuum(), HWCondition(ConditionKind.TOPOLOGICAL, 0))


def test_annihilation_kernel_on_locus(t):
    """h = 2/t − 1 时 Q_-1 v 被 Topological(1) 湮灭"""
    spec = ModuleSpec.topological(2 / t - 1, t)
    module = build_module(spec)
    (vector,) = annihilation_kernel(module, Bigrade(-1, 1), HWCondition(ConditionKind.TOPOLOGICAL, 1))
    assert str(vector) == "Q-1 v"


def test_relaxed_extremal_norm_values():
    j, lam = RatFun(Fraction(1, 2)), RatFun(3)
    assert relaxed_extremal_norm(j, lam, 0) == 1
    assert relaxed_extremal_norm(j, lam, 1) == 3
    assert relaxed_extremal_norm(j, lam, -1) == 4
    assert relaxed_extremal_norm(j, lam, 2) == 3 * (3 - 1 - 2)


@pytest.mark.parametrize("n", [-2, -1, 1, 2, 3])
def test_gram_matches_norm_formula(t, n):
    """一维分量的 Gram 矩阵等于闭式模方"""
    j, lam = RatFun(Fraction(2, 3)), RatFun(Fraction(5, 2))
    gram = gram_matrix(ModuleSpec.relaxed(j, lam, t - 2), Bigrade(n, 0))
    assert len(gram.basis) == 1
    assert gram.entries[0][0] == relaxed_extremal_norm(j, lam, n)


def test_gram_is_symmetric_at_level_one(t):
    gram = gram_matrix(ModuleSpec.sl2_verma(RatFun(Fraction(1, 3)), t - 2), Bigrade(0, 1))
    assert len(gram.basis) == 2
    assert gram.is_symmetric()


def test_gram_requires_sl2_module(t):
    with pytest.raises(ModuleSpecError):
        gram_matrix(ModuleSpec.topological(RatFun(0), t), Bigrade(0, 1))


def test_sugawara_on_highest_weight_states(t):
    j, k = RatFun(Fraction(1, 2)), RatFun(1)
    verma = build_module(ModuleSpec.sl2_verma(j, k))
    assert sugawara_l0(verma.vacuum()) == verma.vacuum().scale(j * (j + 1) / (k + 2))
    lam = RatFun(3)
    relaxed = build_module(ModuleSpec.relaxed(j, lam, k))
    assert sugawara_l0(relaxed.vacuum()) == relaxed.vacuum().scale(sugawara_dimension(j, lam, k))


def test_criteria_on_vacua(t):
    """Verma 真空满足 sl(2) 判据, relaxed 真空不满足"""
    verma = build_module(ModuleSpec.sl2_verma(RatFun(Fraction(1, 3)), t - 2))
    assert classify_criterion(verma.vacuum(), CriterionKind.RELAXED_SL2).verdict is Verdict.HOLDS
    relaxed = build_module(ModuleSpec.relaxed(RatFun(Fraction(1, 3)), RatFun(Fraction(7, 2)), t - 2))
    result = classify_criterion(relaxed.vacuum(), CriterionKind.RELAXED_SL2)
    assert result.verdict is Verdict.FAILS
    assert result.witness == 0
    topo = build_module(ModuleSpec.topological(RatFun(Fraction(1, 3)), t))
    assert classify_criterion(topo.vacuum(), CriterionKind.TOPOLOGICAL_PARABOLA)


def test_criterion_family_mismatch(t):
    topo = build_module(ModuleSpec.topological(RatFun(0), t))
    with pytest.raises(ModuleSpecError):
        classify_criterion(topo.vacuum(), CriterionKind.RELAXED_SL2)


def test_criterion_step_limit_grows_with_charge(t):
    """(J-_0)^12 v 需要 13 步 J+_0 才变为零, 不能判为失败"""
    verma = build_module(ModuleSpec.sl2_verma(RatFun(Fraction(1, 3)), t - 2))
    state = StateVector(verma, {(verma.algebra.mode("J-", 0),) * 12: ONE})
    assert state.bigrade == Bigrade(-12, 0)
    result = classify_criterion(state, CriterionKind.RELAXED_SL2, horizon=8, escape_depth=2)
    assert result.verdict is Verdict.HOLDS, result.detail
