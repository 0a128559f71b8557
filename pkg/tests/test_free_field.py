"""
自由场与张量积分解测试
"""

from fractions import Fraction

import pytest

from src.core.exceptions import ModuleSpecError
from src.core.free_field import (
    XI,
    FockState,
    TensorProduct,
    SL2Current,
    Theorem,
    Vertex,
    check_sl2_closure,
    fock_energy,
    partition_tuples,
    sl2_target_spec,
    verify_decomposition,
    vertex_mode,
)
from src.core.modules import ModuleSpec, ModuleVariant
from src.core.scalar import ONE, RatFun

H = RatFun(Fraction(1, 3))
T = RatFun(Fraction(5, 2))


def test_partitions_and_energies():
    assert partition_tuples(0) == [()]
    assert partition_tuples(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [fock_energy(n) for n in (-1, 0, 1, 2)] == [-1, 0, 0, -1]


def test_oscillators_use_negative_metric():
    assert XI.oscillator(-1, (0, ())) == {(0, (1,)): ONE}
    assert XI.oscillator(1, (0, (1,))) == {(0, ()): RatFun(-1)}
    assert XI.oscillator(0, (2, ())) == {(2, ()): RatFun(-2)}


def test_vertex_modes_on_vacuum():
    """ψ_0 |0> = |1>, ψ*_1 |0> = |−1>"""
    vacuum = FockState.vacuum(0)
    assert vertex_mode(Vertex.PSI, 0, vacuum) == FockState({(1, ()): ONE})
    assert vertex_mode(Vertex.PSI, 1, vacuum).is_zero
    assert vertex_mode(Vertex.PSI_STAR, 1, vacuum) == FockState({(-1, ()): ONE})
    assert vertex_mode(Vertex.PSI_STAR, 2, vacuum).is_zero


def test_tensor_product_requires_untwisted_n2_module():
    with pytest.raises(ModuleSpecError):
        TensorProduct(ModuleSpec.sl2_verma(RatFun(0), RatFun(1)))
    with pytest.raises(ModuleSpecError):
        TensorProduct(ModuleSpec.topological(H, T, theta=1))


def test_grading_of_product_vacuum():
    product = TensorProduct(ModuleSpec.topological(H, T))
    assert product.grade(((), 0, ())) == (0, 0, 0)
    assert product.component_basis(0, 0, 0) == [((), 0, ())]


def test_target_spec():
    target = sl2_target_spec(ModuleSpec.massive(H, RatFun(2), T), theta=1)
    assert target.variant is ModuleVariant.RELAXED
    assert target.j == -T * H / 2
    assert target.lam == T * 2
    assert target.k == T - 2
    assert target.theta == 1


def test_sl2_closure_on_low_states():
    """张量积上的 sl(2) 与 Ĩ 满足括号关系"""
    product = TensorProduct(ModuleSpec.topological(H, T))
    assert check_sl2_closure(product, max_level=0, mode_span=1) == []


def test_topological_decomposition_small_window():
    result = verify_decomposition(ModuleSpec.topological(H, T), theta_window=(-1, 1), max_level=1, charge_window=(-1, 1))
    assert result.theorem is Theorem.TOPOLOGICAL
    assert [f.theta for f in result.hw_found] == [-1, 0, 1]
    assert all(f.passed for f in result.hw_found), [f.detail for f in result.hw_found]
    assert result.mismatches == {}
    assert result.passed


@pytest.mark.slow
def test_massive_decomposition_small_window():
    result = verify_decomposition(
        ModuleSpec.massive(H, RatFun(Fraction(3, 4)), T), theta_window=(-1, 1), max_level=1, charge_window=(-1, 1)
    )
    assert result.theorem is Theorem.RELAXED
    assert result.passed, [f.detail for f in result.hw_found]


def test_sl2_currents_stable_under_wider_summation():
    """复合模的求和范围放宽两项, J 的作用与闭合性都不变"""
    spec = ModuleSpec.topological(H, T)
    narrow, wide = TensorProduct(spec), TensorProduct(spec, margin=2)
    keys = narrow.states_up_to(1, sectors=range(-1, 2), charges=range(-1, 2))
    for key in keys:
        for current in SL2Current:
            for n in range(-1, 2):
                assert wide.sl2_key(current, n, key) == narrow.sl2_key(current, n, key)
    assert check_sl2_closure(wide, max_level=0, mode_span=1) == []


def test_decomposition_stable_under_wider_summation():
    spec = ModuleSpec.topological(H, T)
    narrow = verify_decomposition(spec, theta_window=(0, 1), max_level=1, charge_window=(-1, 1))
    wide = verify_decomposition(spec, theta_window=(0, 1), max_level=1, charge_window=(-1, 1), margin=2)
    assert wide.passed and narrow.passed
    assert [f.states for f in wide.hw_found] == [f.states for f in narrow.hw_found]
    assert wide.mismatches == narrow.mismatches == {}


def test_negative_summation_margin_rejected():
    with pytest.raises(ModuleSpecError):
        TensorProduct(ModuleSpec.topological(H, T), margin=-1)
