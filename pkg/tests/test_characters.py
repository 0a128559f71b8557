"""
特征标表测试: 生成函数计数与 PBW 枚举一致
"""

from fractions import Fraction

import pytest

from src.core.characters import (
    BIGRADE,
    CharacterSeries,
    character,
    combine,
    partition_counts,
    quotient_character,
    with_sector,
)
from src.core.exceptions import GradingError
from src.core.modules import Bigrade, ModuleSpec, build_basis
from src.core.scalar import RatFun
from src.core.singular import topological_h, topological_position


def test_partition_counts():
    assert partition_counts(7) == [1, 1, 2, 3, 5, 7, 11, 15]


def test_topological_character(t):
    series = character(ModuleSpec.topological(RatFun(Fraction(1, 3)), t), (-2, 2), 2)
    assert series.dim(0, 0) == 1
    assert series.dim(0, 1) == 2
    assert series.dim(-1, 1) == 1
    assert series.dim(1, 1) == 1
    assert series.dim(0, 2) == 6
    assert series.dim(2, 0) == 0


@pytest.mark.parametrize(
    "spec",
    [
        ModuleSpec.topological(RatFun(Fraction(1, 3)), RatFun(Fraction(5, 2))),
        ModuleSpec.massive(RatFun(Fraction(1, 3)), RatFun(1), RatFun(Fraction(5, 2)), theta=1),
        ModuleSpec.sl2_verma(RatFun(Fraction(1, 2)), RatFun(1), theta=-1),
        ModuleSpec.relaxed(RatFun(Fraction(1, 2)), RatFun(3), RatFun(1)),
        ModuleSpec.ghost(2),
    ],
    ids=lambda s: s.variant.value,
)
def test_character_matches_basis_enumeration(spec):
    """特征标与 build_basis 的维数逐项相同"""
    series = character(spec, (-2, 2), 3)
    for charge in range(-2, 3):
        for level in range(0, 4):
            assert series.dim(charge, level) == len(build_basis(spec, Bigrade(charge, level))), (charge, level)


def test_series_arithmetic():
    bounds = {"charge": (-1, 1), "level": (0, 2)}
    a = CharacterSeries(BIGRADE, bounds, {(0, 0): 1, (1, 1): 2})
    b = CharacterSeries(BIGRADE, bounds, {(0, 0): 1, (-1, 1): 1})
    product = combine(a, b)
    assert product.dim(0, 0) == 1
    assert product.dim(0, 2) == 2
    assert (a + b).dim(0, 0) == 2
    assert a.difference(b) == {(-1, 1): -1, (1, 1): 2}


def test_series_drops_out_of_range_entries():
    series = CharacterSeries(BIGRADE, {"charge": (0, 0), "level": (0, 1)}, {(0, 0): 1, (3, 0): 5})
    assert series.keys() == [(0, 0)]


def test_series_validation():
    with pytest.raises(GradingError):
        CharacterSeries(BIGRADE, {"charge": (0, 1)}, {})
    with pytest.raises(GradingError):
        combine(
            CharacterSeries(BIGRADE, {"charge": (0, 0), "level": (0, 0)}),
            CharacterSeries(BIGRADE, {"charge": (0, 0), "level": (0, 0)}),
            op="quotient",
        )


def test_with_sector_and_csv():
    series = CharacterSeries(BIGRADE, {"charge": (-1, 1), "level": (0, 1)}, {(0, 0): 1, (-1, 1): 2})
    bounds = {"charge": (-2, 2), "level": (0, 3), "sector": (0, 1)}
    shifted = with_sector(series, 1, bounds, level_shift=1, charge_shift=-1)
    assert shifted.dim(-1, 1, 1) == 1
    assert shifted.dim(-2, 2, 1) == 2
    assert series.to_csv() == "charge,level,dim\n-1,1,2\n0,0,1\n"


@pytest.mark.parametrize("sign", ["-", "+"])
@pytest.mark.parametrize("r,s", [(1, 1), (1, 2), (2, 1)])
def test_quotient_character_is_nonnegative(t, sign, r, s):
    """扣除奇异向量生成的子模后各分量维数非负, 奇异向量所在分量少一维"""
    window = (-2, 2)
    quotient = quotient_character(sign, r, s, t, window, 3)
    host = character(ModuleSpec.topological(topological_h(sign, r, s, t), t), window, 3)
    assert all(v > 0 for v in quotient.table.values())
    q, level, _ = topological_position(sign, r, s)
    assert quotient.dim(q, level) == host.dim(q, level) - 1
    assert quotient.dim(0, 0) == 1


def test_quotient_character_level_one(t):
    """h = h⁻(1, 1): 商模在 (−1, 1) 处为零, 在 (0, 1) 处只剩 L-1 v 与 H-1 v 的一个组合"""
    quotient = quotient_character("-", 1, 1, t, (-1, 1), 1)
    assert quotient.dim(-1, 1) == 0
    assert quotient.dim(0, 1) == 1
    assert quotient.dim(1, 1) == 1
