# -*- coding: utf-8 -*-
"""
周期性判据

谱曲线 y² = ∏(x − a_i) ∏(x − μ_j)，Q_± 是 x = 0 上的两点。
轨迹 n 周期 ⇔ n(Q_+ − Q_−) = 0 ⇔ 判据矩阵的秩 < n − d + 1。

奇异情形：
    case_i    a_i = μ_j，焦散退化为超平面，需要在 d−1 维重新检验
    case_ii   a_i = a_j
    case_iii  μ_i = μ_j
后两种为普通二重点，秩判据照常适用；三重及以上重合直接拒绝。
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from billiards.cayley.hankel import hankel_matrix, hankel_shape
from billiards.cayley.linalg import rank_exact, scaled_min_singular_value
from billiards.cayley.series import sqrt_series, poly_from_roots, RationalSeries
from billiards.config import TIE_RTOL
from billiards.errors import ZeroParameter, HigherMultiplicity, BadParameter
from billiards.exact import is_exact, format_number

_logger = logging.getLogger(__name__)

# 谱曲线 y² = C·∏(1 − t/r) 的常数 C，只缩放 y，不影响秩
CURVE_CONSTANT = 1


def _tie(u, v):
    if is_exact(u) and is_exact(v):
        return u == v
    return abs(float(u) - float(v)) <= TIE_RTOL * max(abs(float(u)), abs(float(v)))


@dataclass(frozen=True)
class SpectralCurveSpec:
    """
    谱曲线的根与重数

    Args:
        roots: a_0..a_d, μ_1..μ_{d−1}（精确有理数）
        genus: g = d − 1
        multiplicity_map: 根 → 重数
    """

    roots: tuple
    genus: int
    multiplicity_map: dict = field(default_factory=dict)

    @classmethod
    def from_ellipsoid(cls, E):
        if any(v == 0 for v in E.a) or any(m == 0 for m in E.mu):
            raise ZeroParameter("谱曲线的根不能为 0")
        if len(E.mu) != E.d - 1:
            raise BadParameter('mu', f"需要 d−1 = {E.d - 1} 个焦散参数")
        roots = tuple(Fraction(v) for v in tuple(E.a) + tuple(E.mu))
        return cls(roots, E.d - 1, dict(Counter(roots)))

    @property
    def d(self):
        return self.genus + 1

    def polynomial(self):
        return poly_from_roots(self.roots)

    def double_points(self):
        return sorted(r for r, m in self.multiplicity_map.items() if m == 2)


@dataclass(frozen=True)
class PeriodicityVerdict:
    """判据结果；periodic 为真时必有 rank < threshold 且 n ≥ d"""

    periodic: bool
    n: int
    d: int
    rank: object = None
    threshold: object = None
    degeneracy: str = 'none'
    reason: str = ''
    route: str = 'full'
    indicator: object = None
    curve_constant: int = CURVE_CONSTANT

    def to_dict(self):
        return {
            'n': self.n,
            'd': self.d,
            'periodic': self.periodic,
            'rank': self.rank,
            'threshold': self.threshold,
            'degeneracy': self.degeneracy,
            'reason': self.reason,
            'route': self.route,
            'indicator': self.indicator,
            'curve_constant': self.curve_constant,
        }


def classify_degeneracy(E):
    """
    在秩检验之前对参数重合分类

    Returns:
        str: 'none' | 'case_i' | 'case_ii' | 'case_iii'

    Raises:
        HigherMultiplicity: 三个或更多参数重合
    """
    values = list(E.a) + list(E.mu)
    for i, u in enumerate(values):
        count = sum(1 for v in values if _tie(u, v))
        if count >= 3:
            raise HigherMultiplicity(f"参数 {format_number(u)} 出现 {count} 次，超出普通二重点")

    a, mu = list(E.a), list(E.mu)
    if any(_tie(ai, mj) for ai in a for mj in mu):
        return 'case_i'
    if any(_tie(a[i], a[j]) for i in range(len(a)) for j in range(i + 1, len(a))):
        return 'case_ii'
    if any(_tie(mu[i], mu[j]) for i in range(len(mu)) for j in range(i + 1, len(mu))):
        return 'case_iii'
    return 'none'


def series_for(curve, order, route='full'):
    """
    曲线的归一化平方根级数

    route='normalized' 时先去掉二重点 m：sqrt(P) = (m − x) sqrt(P̃)，
    于是 T_k = T̃_k − T̃_{k−1}/m。
    """
    if route == 'full':
        return sqrt_series(curve.polynomial(), order)
    if route != 'normalized':
        raise BadParameter('route', "只能是 full 或 normalized")

    doubles = curve.double_points()
    reduced = list(curve.roots)
    for m in doubles:
        reduced.remove(m)
        reduced.remove(m)
    if not reduced:
        raise BadParameter('route', "规范化后没有剩余的根")
    series = sqrt_series(poly_from_roots(reduced), order)
    coeffs = list(series.coeffs)
    for m in doubles:
        coeffs = [coeffs[0]] + [coeffs[k] - coeffs[k - 1] / m for k in range(1, len(coeffs))]
    b0_squared = series.b0_squared
    for m in doubles:
        b0_squared *= m * m
    return RationalSeries(tuple(coeffs), b0_squared)


def cayley_condition(E, n, route='full'):
    """
    判断焦散参数 μ 是否对应 n 周期轨迹

    Args:
        E (MinkowskiEllipsoid): 椭球与 d−1 个焦散参数
        n (int): 周期
        route (str): 'full' 直接展开奇异曲线；'normalized' 先去掉二重点

    Returns:
        PeriodicityVerdict: 判据结果

    Raises:
        ZeroParameter: 某个参数为 0
        HigherMultiplicity: 三重及以上重合
        BadParameter: n < 1
    """
    if n < 1:
        raise BadParameter('n', "n must be ≥ 1")
    d = E.d
    curve = SpectralCurveSpec.from_ellipsoid(E)
    degeneracy = classify_degeneracy(E)

    if degeneracy == 'case_i':
        return PeriodicityVerdict(
            False, n, d, degeneracy='case_i', route=route,
            reason="caustic degenerates into a hyperplane; rerun at dimension d-1",
        )
    rows, cols = hankel_shape(n, d)
    if n < d:
        return PeriodicityVerdict(False, n, d, threshold=cols, degeneracy=degeneracy, route=route, reason="n<d")

    series = series_for(curve, 2 * n - 1, route=route)
    matrix = hankel_matrix(series, n, d)
    rank = rank_exact(matrix)
    periodic = rank < cols
    # 精确秩亏时指示量取 0，否则为缩放后的最小奇异值
    indicator = 0.0 if periodic else scaled_min_singular_value(matrix)
    _logger.info("Cayley 判据: d=%d n=%d rank=%d threshold=%d periodic=%s indicator=%.3e",
                 d, n, rank, cols, periodic, indicator)
    return PeriodicityVerdict(
        periodic, n, d, rank=rank, threshold=cols, degeneracy=degeneracy, route=route, indicator=indicator,
        reason="rank < n-d+1" if periodic else "rank = n-d+1",
    )
