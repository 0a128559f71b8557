"""
玻色弦实现测试: 缀饰、鬼场 picture、D 态与 Virasoro 约化
"""

from fractions import Fraction

import pytest

from src.core.exceptions import ModuleSpecError
from src.core.scalar import RatFun
from src.core.string_realization import (
    PseudomassiveLabel,
    alternate_dressing,
    check_n2_closure,
    d_diagram,
    d_state,
    dress,
    dressing_dimension,
    ghost_picture_check,
    ghost_vacuum,
    key_identity,
    key_identity_direct,
    liouville_metric,
    matches_label,
    matter_central_charge,
    reduction_table,
    string_space,
)

H = RatFun(Fraction(1, 2))
T = RatFun(3)


def test_background_charges(t):
    assert liouville_metric(RatFun(2)) == RatFun(Fraction(-1, 4))
    assert matter_central_charge(RatFun(1)) == 1
    assert matter_central_charge(t) + (13 + 6 / t + 6 * t) == 26


def test_dressing_dimension(t):
    assert dressing_dimension(RatFun(1), t) == 0
    h = RatFun(Fraction(2, 7))
    assert dressing_dimension(alternate_dressing(h, t), t) == dressing_dimension(h, t)


@pytest.mark.parametrize("theta", range(-3, 4))
def test_ghost_pictures(theta):
    """各 picture 的鬼场真空满足湮灭条件与能量公式"""
    assert ghost_picture_check(theta)


def test_ghost_vacuum_text():
    assert str(ghost_vacuum(0)) == "c1 v"
    assert str(ghost_vacuum(-1)) == "v"
    assert str(ghost_vacuum(-2)) == "b-2 v"


@pytest.mark.parametrize("theta", [0, 1, -1])
def test_dressed_primary_matches_label(theta):
    """缀饰后的物质主态是伪 massive 最高权态"""
    delta = RatFun(Fraction(1, 5))
    state, label = dress(delta, H, T, theta)
    assert label.theta == theta
    assert label.l == delta - dressing_dimension(H, T)
    assert matches_label(state, label)


def test_label_text_and_json():
    label = PseudomassiveLabel(H, RatFun(0), T, 1)
    assert str(label) == "|1/2, 0, 3; 1>*"
    assert label.to_json() == {"h": "1/2", "l": "0", "t": "3", "theta": 1}


def test_d_state_at_own_picture(t):
    """α = θ 时标签就是 (h, 0, t; θ)"""
    h = RatFun(Fraction(1, 3))
    assert d_state(h, t, 2, 2) == PseudomassiveLabel(h, RatFun(0), t, 2)
    assert d_state(h, t, 0, -1).h == h + 2 / t


def test_key_identity(t):
    assert key_identity(1, 0, 0, 1, t)
    assert key_identity_direct(1, 0, 0, 1, t)
    assert key_identity(1, 1, 1, 0, RatFun(2))
    assert key_identity_direct(1, 1, 1, 0, RatFun(2))
    assert not key_identity(1, 1, 0, 0, RatFun(2))
    assert not key_identity_direct(1, 1, 0, 0, RatFun(2))
    with pytest.raises(ModuleSpecError):
        key_identity(1, -1, 0, 0, t)


def test_reduction_table_matches_kac(t):
    """拓扑轨迹上的缀饰维数等于 Kac 维数"""
    rows = reduction_table(3, 3, t)
    assert len(rows) == 18
    assert all(row.equal for row in rows)
    plus = next(row for row in rows if row.sign == "+" and row.s == 1)
    assert plus.kac_s == 0


@pytest.mark.slow
def test_d_diagram_small_window():
    graph = d_diagram(H, T, 0, (-1, 1))
    assert [n.extra["verified"] for n in graph.nodes] == ["true", "true", "true"]
    assert len(graph.edges) == 4


@pytest.mark.slow
def test_n2_closure_on_string_vacuum():
    space = string_space(T, RatFun(Fraction(1, 5)), RatFun(Fraction(3, 4)), 0)
    assert check_n2_closure(space, max_level=0, mode_span=1) == []
