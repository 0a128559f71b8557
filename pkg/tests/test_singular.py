"""
奇异向量: 拓扑轨迹、带荷态、sl(2) 与 Virasoro 奇异向量
"""

from fractions import Fraction

import pytest

from src.core.exceptions import ModuleSpecError, TruncationError
from src.core.modules import Bigrade, ConditionKind, HWCondition, ModuleSpec
from src.core.scalar import RatFun
from src.core.singular import (
    SingularKind,
    charged_l,
    charged_lambda,
    construct_charged,
    detect_singular,
    kac_dimension,
    massive_level_one_l,
    relaxed_level_one_lambda,
    search_conditions,
    topological_h,
    topological_position,
)


def test_locus_formulas(t):
    assert topological_h("-", 1, 1, t) == 2 / t - 1
    assert topological_h("+", 1, 1, t) == 0
    assert topological_h("+", 2, 3, t) == 2 - 1 / t
    assert charged_lambda(1, RatFun(Fraction(1, 2))) == 3
    assert kac_dimension(1, 1, t) == 0


def test_positions():
    assert topological_position("-", 1, 1) == (-1, 1, 1)
    assert topological_position("+", 1, 1) == (1, 1, -1)
    assert topological_position("-", 2, 1) == (-2, 3, 2)


def test_bad_locus_arguments(t):
    with pytest.raises(ModuleSpecError):
        topological_h("-", 0, 1, t)
    with pytest.raises(ModuleSpecError):
        topological_h("*", 1, 1, t)


def test_search_conditions(t):
    """拓扑模在荷 q 的分量上用 Topological(θ − q); massive 模在每个分量上都搜 Massive(θ)"""
    spec = ModuleSpec.topological(RatFun(0), t, theta=2)
    assert search_conditions(spec, Bigrade(-1, 1)) == [HWCondition(ConditionKind.TOPOLOGICAL, 3)]
    massive = ModuleSpec.massive(RatFun(0), RatFun(1), t)
    assert search_conditions(massive, Bigrade(0, 1)) == [HWCondition(ConditionKind.MASSIVE, 0)]
    assert search_conditions(massive, Bigrade(-1, 1)) == [
        HWCondition(ConditionKind.TOPOLOGICAL, 0),
        HWCondition(ConditionKind.MASSIVE, 0),
    ]
    relaxed = ModuleSpec.relaxed(RatFun(0), RatFun(1), t - 2)
    assert search_conditions(relaxed, Bigrade(0, 1)) == [
        HWCondition(ConditionKind.SL2_VERMA, 0),
        HWCondition(ConditionKind.RELAXED, 0),
    ]
    assert search_conditions(relaxed, Bigrade(1, 1)) == [HWCondition(ConditionKind.SL2_VERMA, 1)]


def test_minus_singular_vector_at_level_one(t):
    """h = 2/t − 1: 唯一的奇异向量 Q_-1 v, 位于 (−1,1), θ = 1"""
    spec = ModuleSpec.topological(topological_h("-", 1, 1, t), t)
    (vector,) = detect_singular(spec, max_level=1)
    assert vector.kind is SingularKind.TOPOLOGICAL
    assert vector.bigrade == Bigrade(-1, 1)
    assert vector.theta == 1
    assert vector.verified
    assert str(vector.state) == "Q-1 v"


def test_plus_singular_vector_at_level_one(t):
    spec = ModuleSpec.topological(topological_h("+", 1, 1, t), t)
    (vector,) = detect_singular(spec, max_level=1)
    charge, level, theta = topological_position("+", 1, 1)
    assert vector.bigrade == Bigrade(charge, level)
    assert vector.theta == theta
    assert str(vector.state) == "G-1 v"


def test_generic_topological_module_has_none(t):
    spec = ModuleSpec.topological(RatFun(Fraction(1, 3)), t)
    assert detect_singular(spec, max_level=2) == []


def test_detect_respects_truncation(t):
    spec = ModuleSpec.topological(RatFun(0), t)
    with pytest.raises(TruncationError):
        detect_singular(spec, max_level=5, truncation=3)


def test_fock_modules_not_searched():
    with pytest.raises(ModuleSpecError):
        detect_singular(ModuleSpec.fock(RatFun(-1), RatFun(1)), max_level=1)


@pytest.mark.parametrize("p", [-3, -2, -1, 0, 1, 2])
def test_charged_states_are_annihilated(t, p):
    """Λ = Λ_ch(p, j) 处的带荷态满足 sl(2) Verma 条件"""
    vector = construct_charged(p, RatFun(Fraction(2, 7)), t - 2)
    assert vector.verified
    assert vector.condition.theta == (0 if p <= -1 else 1)
    assert vector.labels == {"p": p}


def test_charged_state_text(t):
    vector = construct_charged(-1, RatFun(Fraction(1, 2)), t - 2)
    assert str(vector.state) == "J-_0 v"
    assert vector.bigrade == Bigrade(-1, 0)


def test_sl2_verma_singular_at_j_zero(t):
    spec = ModuleSpec.sl2_verma(RatFun(0), t - 2)
    (vector,) = detect_singular(spec, max_level=0)
    assert vector.bigrade == Bigrade(-1, 0)
    assert str(vector.state) == "J-_0 v"
    assert detect_singular(ModuleSpec.sl2_verma(RatFun(Fraction(1, 3)), t - 2), max_level=0) == []


def test_virasoro_level_one_singular_vector(t):
    spec = ModuleSpec.virasoro(kac_dimension(1, 1, t), 13 - 6 / t - 6 * t)
    (vector,) = detect_singular(spec, max_level=1)
    assert vector.kind is SingularKind.VIRASORO
    assert str(vector.state) == "T-1 v"


def test_level_one_loci_match_under_dictionary(t):
    """j = −th/2, k = t − 2 时 tℓ = Λ"""
    h = RatFun(Fraction(2, 5))
    assert t * massive_level_one_l(h, t) == relaxed_level_one_lambda(-t * h / 2, t - 2)


def test_uncharged_massive_singular_vector_at_level_one():
    """h = 1/3, t = 7/5, ℓ = −1/45: (0, 1) 处有 Massive(0) 奇异向量"""
    h, t = RatFun(Fraction(1, 3)), RatFun(Fraction(7, 5))
    l = massive_level_one_l(h, t)
    assert l == RatFun(Fraction(-1, 45))
    found = detect_singular(ModuleSpec.massive(h, l, t), max_level=1)
    uncharged = [v for v in found if v.bigrade == Bigrade(0, 1)]
    (vector,) = uncharged
    assert vector.kind is SingularKind.MASSIVE
    assert vector.condition == HWCondition(ConditionKind.MASSIVE, 0)
    assert vector.verified
    assert str(vector.state) == "L-1 v + 14/15*H-1 v - 3/2*G-1 Q0 v"


def test_uncharged_relaxed_singular_vector_at_level_one():
    j, k = RatFun(Fraction(-7, 30)), RatFun(Fraction(-3, 5))
    lam = relaxed_level_one_lambda(j, k)
    assert lam == RatFun(Fraction(-7, 225))
    found = detect_singular(ModuleSpec.relaxed(j, lam, k), max_level=1)
    (vector,) = [v for v in found if v.bigrade == Bigrade(0, 1)]
    assert vector.kind is SingularKind.RELAXED
    assert vector.condition == HWCondition(ConditionKind.RELAXED, 0)
    assert vector.verified


def test_charged_vector_in_massive_module_is_labelled_charged(t):
    """ℓ = ℓ_ch(0) = 0: Q0 v 同时满足两组条件, 只按带荷向量报告一次"""
    h = RatFun(Fraction(1, 3))
    found = detect_singular(ModuleSpec.massive(h, charged_l(0, h, t), t), max_level=0)
    (vector,) = found
    assert vector.kind is SingularKind.CHARGED
    assert vector.bigrade == Bigrade(-1, 0)
    assert str(vector.state) == "Q0 v"


def test_generic_massive_and_relaxed_modules_have_none():
    h, t = RatFun(Fraction(1, 3)), RatFun(Fraction(7, 5))
    l = RatFun(Fraction(10, 53))
    assert detect_singular(ModuleSpec.massive(h, l, t), max_level=1) == []
    assert detect_singular(ModuleSpec.relaxed(-t * h / 2, t * l, t - 2), max_level=1) == []
