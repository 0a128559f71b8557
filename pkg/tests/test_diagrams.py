"""
极值图测试
"""

from fractions import Fraction

import pytest

from src.core.diagrams import extremal_diagram, extremal_levels
from src.core.modules import ModuleSpec
from src.core.scalar import RatFun


def _topological(t):
    return ModuleSpec.topological(RatFun(Fraction(1, 3)), t)


def test_extremal_levels(t):
    assert extremal_levels(_topological(t), (-2, 2), 3) == {-2: 3, -1: 1, 0: 0, 1: 1, 2: 3}


def test_topological_diagram_nodes_and_edges(t):
    graph = extremal_diagram(_topological(t), (-1, 1))
    assert [n.key for n in graph.nodes] == ["q-1", "q0", "q1"]
    vacuum = graph.node("q0")
    assert vacuum.flag == "Topological(0)"
    assert "Topological(0)" in vacuum.conditions
    assert graph.node("q1").flag is None
    assert [(e.source, e.target, e.mode) for e in graph.edges] == [("q0", "q-1", "Q-1"), ("q0", "q1", "G-1")]
    assert [n.key for n in graph.cusps()] == ["q0"]


def test_dot_output(t):
    dot = extremal_diagram(_topological(t), (-1, 1)).to_dot()
    assert dot.startswith("digraph {\n")
    assert '"q0" [shape=doublecircle label="0,0,Topological(0)"];' in dot
    assert '"q0" -> "q1" [label="G-1"];' in dot
    assert dot.endswith("}\n")


def test_json_output(t):
    data = extremal_diagram(_topological(t), (-1, 1)).to_json()
    assert data["edges"][0] == {"from": "q0", "to": "q-1", "mode": "Q-1"}
    assert data["nodes"][1]["flag"] == "Topological(0)"


@pytest.mark.parametrize("theta", [0, 1])
def test_massive_diagram_has_two_tops(t, theta):
    """荷 0 与荷 −1 同在最低能级, 以 Q 零能级模相连; 条件随 θ 整体平移"""
    spec = ModuleSpec.massive(RatFun(Fraction(1, 3)), RatFun(Fraction(3, 4)), t, theta=theta)
    graph = extremal_diagram(spec, (-2, 1), max_level=1)
    assert [(n.key, n.level) for n in graph.nodes] == [("q-2", 1), ("q-1", 0), ("q0", 0), ("q1", 1)]
    for n in graph.nodes:
        assert n.conditions == [f"Massive({theta - n.charge})"]
    assert graph.cusps() == []
    q0_mode = f"Q{-theta}"
    assert [(e.source, e.target, e.mode) for e in graph.edges] == [
        ("q-1", "q-2", f"Q{-1 - theta}"),
        ("q0", "q-1", q0_mode),
        ("q0", "q1", f"G{theta - 1}"),
    ]


@pytest.mark.parametrize("theta", [0, 1])
def test_relaxed_diagram_is_flat(t, theta):
    """relaxed 模的极值态全在能级 0, 每个节点都只满足 Relaxed(θ)"""
    spec = ModuleSpec.relaxed(RatFun(Fraction(1, 3)), RatFun(Fraction(5, 7)), t - 2, theta=theta)
    graph = extremal_diagram(spec, (-2, 2), max_level=1)
    assert [(n.charge, n.level) for n in graph.nodes] == [(q, 0) for q in range(-2, 3)]
    assert all(n.conditions == [f"Relaxed({theta})"] for n in graph.nodes)
    assert graph.cusps() == []
    raising, lowering = f"J+_{theta}", f"J-_{-theta}"
    assert [(e.source, e.target, e.mode) for e in graph.edges] == [
        ("q-1", "q-2", lowering),
        ("q0", "q-1", lowering),
        ("q0", "q1", raising),
        ("q1", "q2", raising),
    ]
