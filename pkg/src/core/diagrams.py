"""
极值图: 每个荷上能级最低的态, 以及连接相邻极值态的模
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .algebra import AlgebraFamily
from .characters import character
from .modules import (
    Bigrade,
    ConditionKind,
    HWCondition,
    ModuleSpec,
    StateVector,
    build_module,
    check_hw,
)
from .scalar import ONE
from ..utils.logger import get_logger

logger = get_logger(__name__)


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


@dataclass
class DiagramNode:
    key: str
    charge: int
    level: int
    conditions: List[str] = field(default_factory=list)
    flag: Optional[str] = None
    extra: Dict[str, str] = field(default_factory=dict)

    @property
    def label(self) -> str:
        text = f"{self.charge},{self.level}"
        return f"{text},{self.flag}" if self.flag else text


@dataclass
class DiagramEdge:
    source: str
    target: str
    mode: str


@dataclass
class DiagramGraph:
    name: str
    nodes: List[DiagramNode] = field(default_factory=list)
    edges: List[DiagramEdge] = field(default_factory=list)

    def node(self, key: str) -> DiagramNode:
        return next(n for n in self.nodes if n.key == key)

    def cusps(self) -> List[DiagramNode]:
        return [n for n in self.nodes if n.flag]

    def graphviz(self) -> Iterator[str]:
        yield "digraph {\n"
        yield f"  label={_gvquote(self.name)};\n"
        for n in self.nodes:
            shape = "doublecircle" if n.flag else "circle"
            yield f"  {_gvquote(n.key)} [shape={shape} label={_gvquote(n.label)}];\n"
        for e in self.edges:
            yield f"  {_gvquote(e.source)} -> {_gvquote(e.target)} [label={_gvquote(e.mode)}];\n"
        yield "}\n"

    def to_dot(self) -> str:
        return "".join(self.graphviz())

    def to_json(self) -> Dict[str, object]:
        nodes = []
        for n in self.nodes:
            entry: Dict[str, object] = {"charge": n.charge, "level": n.level, "conditions": list(n.conditions)}
            if n.flag:
                entry["flag"] = n.flag
            entry.update(n.extra)
            nodes.append(entry)
        return {
            "name": self.name,
            "nodes": nodes,
            "edges": [{"from": e.source, "to": e.target, "mode": e.mode} for e in self.edges],
        }


_CONDITION_KINDS = {
    AlgebraFamily.N2: (ConditionKind.TOPOLOGICAL, ConditionKind.MASSIVE),
    AlgebraFamily.SL2: (ConditionKind.SL2_VERMA, ConditionKind.RELAXED),
}
_STRONG_KINDS = (ConditionKind.TOPOLOGICAL, ConditionKind.SL2_VERMA)
_RAISING = {AlgebraFamily.N2: ("G", "Q"), AlgebraFamily.SL2: ("J+", "J-")}


def satisfied_conditions(state: StateVector, theta_range: range) -> List[HWCondition]:
    """态满足的全部 (扭曲) 最高权条件"""
    family = state.module.algebra.family
    found = []
    for kind in _CONDITION_KINDS.get(family, ()):
        for theta in theta_range:
            condition = HWCondition(kind, theta)
            if check_hw(state, condition).passed:
                found.append(condition)
    return found


def extremal_levels(spec: ModuleSpec, charge_window: Tuple[int, int], max_level: int) -> Dict[int, int]:
    """每个荷上的最低能级 (在截断内)"""
    series = character(spec, charge_window, max_level)
    levels: Dict[int, int] = {}
    for q, l in series.keys():
        if q not in levels or l < levels[q]:
            levels[q] = l
    return levels


def extremal_diagram(spec: ModuleSpec, charge_window: Tuple[int, int], max_level: Optional[int] = None) -> DiagramGraph:
    """模的极值图, 节点标注其满足的条件, 满足更强条件的节点标为尖点"""
    module = build_module(spec)
    family = module.algebra.family
    lo, hi = charge_window
    if max_level is None:
        reach = max(abs(lo), abs(hi))
        max_level = reach * (reach + 1) // 2 + reach
    levels = extremal_levels(spec, charge_window, max_level)
    graph = DiagramGraph(name=spec.describe())
    states: Dict[int, StateVector] = {}
    for q in sorted(levels):
        basis = module.basis(Bigrade(q, levels[q]))
        state = StateVector(module, {basis[0]: ONE})
        states[q] = state
        spread = abs(q) + 2
        conditions = satisfied_conditions(state, range(spec.theta - spread, spec.theta + spread + 1))
        strong = [c for c in conditions if c.kind in _STRONG_KINDS]
        node = DiagramNode(
            key=f"q{q}",
            charge=q,
            level=levels[q],
            conditions=[str(c) for c in conditions],
            flag=str(strong[0]) if strong else None,
        )
        if len(basis) > 1:
            node.extra["dimension"] = str(len(basis))
        graph.nodes.append(node)

    raise_symbol, lower_symbol = _RAISING.get(family, (None, None))
    if raise_symbol is not None:
        for q in sorted(levels):
            if q + 1 not in levels:
                continue
            if q >= 0:
                src, dst, symbol = q, q + 1, raise_symbol
            else:
                src, dst, symbol = q + 1, q, lower_symbol
            m = module.mode_at_level(symbol, levels[dst] - levels[src])
            if not module.act(m, states[src]).is_zero:
                graph.edges.append(DiagramEdge(f"q{src}", f"q{dst}", str(m)))
    logger.debug(f"extremal diagram {spec.describe()}: {len(graph.nodes)} nodes, {len(graph.edges)} edges")
    return graph
