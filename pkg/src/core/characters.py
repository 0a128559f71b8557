"""
截断的多重分次特征标表

特征标按 PBW 自由生成计数 (生成函数卷积), 与 build_basis 的枚举相互独立。
"""

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exceptions import GradingError
from .modules import ModuleSpec, build_module
from .scalar import RatFun
from .singular import topological_h, topological_position

Key = Tuple[int, ...]
Bounds = Dict[str, Tuple[int, int]]

BIGRADE = ("charge", "level")
TRIGRADE = ("charge", "level", "sector")


@dataclass
class CharacterSeries:
    """各分次分量维数的表"""
    gradings: Tuple[str, ...]
    bounds: Bounds
    table: Dict[Key, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.bounds) != set(self.gradings):
            raise GradingError(f"截断范围 {sorted(self.bounds)} 与分次 {self.gradings} 不符")
        self.table = {k: v for k, v in self.table.items() if v and self.within(k)}
        if any(v < 0 for v in self.table.values()):
            raise GradingError("特征标计数必须非负")

    def within(self, key: Key) -> bool:
        return all(self.bounds[name][0] <= x <= self.bounds[name][1] for name, x in zip(self.gradings, key))

    def dim(self, *key: int) -> int:
        return self.table.get(tuple(key), 0)

    def keys(self) -> List[Key]:
        return sorted(self.table)

    def _check_compatible(self, other: "CharacterSeries") -> None:
        if self.gradings != other.gradings:
            raise GradingError(f"分次不一致: {self.gradings} vs {other.gradings}")

    def __add__(self, other: "CharacterSeries") -> "CharacterSeries":
        self._check_compatible(other)
        table = dict(self.table)
        for k, v in other.table.items():
            table[k] = table.get(k, 0) + v
        return CharacterSeries(self.gradings, dict(self.bounds), table)

    def __mul__(self, other: "CharacterSeries") -> "CharacterSeries":
        """卷积; 结果截断到 self 的范围"""
        self._check_compatible(other)
        table: Dict[Key, int] = {}
        for ka, va in self.table.items():
            for kb, vb in other.table.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                if self.within(key):
                    table[key] = table.get(key, 0) + va * vb
        return CharacterSeries(self.gradings, dict(self.bounds), table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterSeries):
            return NotImplemented
        return self.gradings == other.gradings and self.table == other.table

    def difference(self, other: "CharacterSeries") -> Dict[Key, int]:
        """逐项差 (可能为负), 只列出非零项"""
        self._check_compatible(other)
        keys = set(self.table) | set(other.table)
        diff = {k: self.table.get(k, 0) - other.table.get(k, 0) for k in keys}
        return {k: v for k, v in sorted(diff.items()) if v}

    def restrict(self, bounds: Bounds) -> "CharacterSeries":
        merged = dict(self.bounds)
        for name, (lo, hi) in bounds.items():
            old_lo, old_hi = merged[name]
            merged[name] = (max(lo, old_lo), min(hi, old_hi))
        return CharacterSeries(self.gradings, merged, self.table)

    def regrade(
        self,
        fn: Callable[[Key], Key],
        gradings: Tuple[str, ...],
        bounds: Bounds,
    ) -> "CharacterSeries":
        table: Dict[Key, int] = {}
        for k, v in self.table.items():
            nk = fn(k)
            table[nk] = table.get(nk, 0) + v
        return CharacterSeries(gradings, bounds, table)

    def to_json(self) -> Dict[str, object]:
        return {
            "gradings": list(self.gradings),
            "bounds": {name: list(self.bounds[name]) for name in self.gradings},
            "entries": [{"key": list(k), "dim": v} for k, v in sorted(self.table.items())],
        }

    def rows(self) -> List[List[int]]:
        return [list(k) + [v] for k, v in sorted(self.table.items())]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(list(self.gradings) + ["dim"])
        writer.writerows(self.rows())
        return buffer.getvalue()


def combine(a: CharacterSeries, b: CharacterSeries, op: str = "product") -> CharacterSeries:
    if op == "product":
        return a * b
    if op == "sum":
        return a + b
    raise GradingError(f"未知的组合方式: {op}")


def _free_counts(generators: Iterable[Tuple[int, int, bool]], max_level: int) -> Dict[Tuple[int, int], int]:
    """产生元 (荷, 能级, 是否费米) 自由生成的 (荷, 能级) 计数"""
    counts: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for charge, level, fermionic in generators:
        updated = dict(counts)
        if fermionic:
            for (c, l), n in counts.items():
                if l + level <= max_level:
                    key = (c + charge, l + level)
                    updated[key] = updated.get(key, 0) + n
        else:
            for l in range(level, max_level + 1):
                for (c, ll), n in list(updated.items()):
                    if ll == l - level:
                        key = (c + charge, l)
                        updated[key] = updated.get(key, 0) + n
        counts = updated
    return counts


def character(spec: ModuleSpec, charge_window: Tuple[int, int], max_level: int) -> CharacterSeries:
    """模的 (荷, 能级) 特征标"""
    module = build_module(spec)
    generators = [
        (m.charge, module.mode_level(m), m.is_fermionic) for m in module.creators_up_to(max_level)
    ]
    positive = _free_counts(generators, max_level)
    lo, hi = charge_window
    table: Dict[Key, int] = {}
    for (c, l), n in positive.items():
        for q in range(lo, hi + 1):
            words = module.level_zero_words(q - c)
            if words:
                table[(q, l)] = table.get((q, l), 0) + n * len(words)
    return CharacterSeries(BIGRADE, {"charge": (lo, hi), "level": (0, max_level)}, table)


def partition_counts(max_n: int) -> List[int]:
    """p(0), ..., p(max_n)"""
    counts = _free_counts(((0, n, False) for n in range(1, max_n + 1)), max_n)
    return [counts.get((0, n), 0) for n in range(max_n + 1)]


def with_sector(
    series: CharacterSeries,
    sector: int,
    bounds: Bounds,
    level_shift: int = 0,
    charge_shift: int = 0,
) -> CharacterSeries:
    """把 (荷, 能级) 表放入指定 sector, 并平移分次"""
    return series.regrade(
        lambda k: (k[0] + charge_shift, k[1] + level_shift, sector),
        TRIGRADE,
        bounds,
    )


def total(series_list: Sequence[CharacterSeries]) -> Optional[CharacterSeries]:
    result: Optional[CharacterSeries] = None
    for series in series_list:
        result = series if result is None else result + series
    return result


def quotient_character(
    sign: str,
    r: int,
    s: int,
    t: RatFun,
    charge_window: Tuple[int, int],
    max_level: int,
) -> CharacterSeries:
    """h = h^∓(r, s) 处拓扑 Verma 模除去奇异向量生成的子模后的特征标

    子模是位于 (q, L) 的扭曲 Topological(θ') Verma 模; 扭曲能级 l' 与荷 c'
    对应宿主分次 (q + c', L + l' − θ'c')。
    """
    h = topological_h(sign, r, s, t)
    q, top, theta = topological_position(sign, r, s)
    host = character(ModuleSpec.topological(h, t), charge_window, max_level)
    lo, hi = charge_window
    reach = max(abs(lo - q), abs(hi - q))
    sub = character(
        ModuleSpec.topological(h, t, theta=theta),
        (lo - q, hi - q),
        max(max_level - top + abs(theta) * reach, 0),
    )
    placed = sub.regrade(lambda k: (k[0] + q, k[1] + top - theta * k[0]), BIGRADE, dict(host.bounds))
    table = {k: host.dim(*k) - placed.dim(*k) for k in set(host.table) | set(placed.table)}
    negative = {k: v for k, v in table.items() if v < 0}
    if negative:
        raise GradingError(f"商模特征标出现负数: {sorted(negative)[:3]}")
    return CharacterSeries(BIGRADE, dict(host.bounds), table)
