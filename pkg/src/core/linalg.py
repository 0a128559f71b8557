"""
Q(t) 上的精确线性代数: 零空间与秩

全常数矩阵走 Fraction 高斯消元; 含 t 的矩阵先逐行清分母到 Q[t],
再做无分数 (Bareiss) 行阶梯消元, 每步用 exquo 精确整除。
"""

from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from .scalar import ONE, POLY_RING, ZERO, RatFun
from ..utils.logger import get_logger

logger = get_logger(__name__)

Matrix = Sequence[Sequence[RatFun]]


def _fraction_echelon(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Fraction 上的约化行阶梯形"""
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _clear_row(row: Sequence[RatFun]) -> List[Any]:
    """一行乘以分母的最小公倍式, 得到 Q[t] 中的多项式"""
    pairs = [x.poly_pair() for x in row]
    common = POLY_RING.one
    for _, den in pairs:
        common = common.lcm(den)
    return [num * common.exquo(den) for num, den in pairs]


def _bareiss_echelon(rows: List[List[Any]], ncols: int) -> Tuple[List[List[Any]], List[int]]:
    """无分数行阶梯消元, 矩阵元保持在 Q[t] 中"""
    prev = POLY_RING.one
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = (pivot * rows[i][j] - a * rows[r][j]).exquo(prev)
            rows[i][c] = POLY_RING.zero
        prev = pivot
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def row_echelon(matrix: Matrix, ncols: int) -> Tuple[List[List[RatFun]], List[int]]:
    """返回 (行阶梯形, 主元列)"""
    rows = [list(row) for row in matrix if any(not x.is_zero for x in row)]
    if all(x.is_constant for row in rows for x in row):
        echelon, pivots = _fraction_echelon([[x.constant_value() for x in row] for row in rows], ncols)
        return [[RatFun(x) for x in row] for row in echelon], pivots
    echelon, pivots = _bareiss_echelon([_clear_row(row) for row in rows], ncols)
    return [[RatFun.from_poly(x) for x in row] for row in echelon], pivots


def nullspace(matrix: Matrix, ncols: int) -> List[List[RatFun]]:
    """零空间基: 每个向量在自己的自由列上为 1, 在其它自由列上为 0"""
    echelon, pivots = row_echelon(matrix, ncols)
    logger.debug(f"nullspace: {len(matrix)}x{ncols}, rank {len(pivots)}")
    pivot_set = set(pivots)
    basis: List[List[RatFun]] = []
    for free in (c for c in range(ncols) if c not in pivot_set):
        x = [ZERO] * ncols
        x[free] = ONE
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            acc = ZERO
            for j in range(pc + 1, ncols):
                if not x[j].is_zero and not echelon[i][j].is_zero:
                    acc = acc + echelon[i][j] * x[j]
            if not acc.is_zero:
                x[pc] = -acc / echelon[i][pc]
        basis.append(x)
    return basis


def rank(matrix: Matrix, ncols: int) -> int:
    return len(row_echelon(matrix, ncols)[1])
