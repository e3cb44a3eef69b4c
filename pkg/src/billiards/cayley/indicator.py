# -*- coding: utf-8 -*-
"""
周期判据的连续替代量与焦散参数搜索

period_indicator 是列归一化判据矩阵的最小奇异值，秩条件成立时为 0。
矩阵元素先用精确有理数计算，再转为浮点。
"""

import logging
from fractions import Fraction

import numpy as np
from scipy import optimize

from billiards.cayley.criterion import SpectralCurveSpec, series_for
from billiards.cayley.hankel import hankel_matrix
from billiards.cayley.linalg import determinant_exact, column_scales, scaled_min_singular_value
from billiards.config import CLOSURE_EPS
from billiards.confocal.minkowski import MinkowskiEllipsoid
from billiards.dynamics.closure import caustic_closure_residual
from billiards.errors import BadParameter, NoRootInBracket

_logger = logging.getLogger(__name__)

INDICATOR_TOL = 1e-10
SCAN_SAMPLES = 240


def _exact_matrix(E, n):
    if n < E.d:
        raise BadParameter('n', f"需要 n ≥ d = {E.d}")
    exact = MinkowskiEllipsoid(
        tuple(Fraction(v) for v in E.a), tuple(Fraction(v) for v in E.mu)
    )
    curve = SpectralCurveSpec.from_ellipsoid(exact)
    return hankel_matrix(series_for(curve, 2 * n - 1), n, E.d)


def period_indicator(E, n):
    """
    列归一化判据矩阵的最小奇异值

    μ 靠近 0 时 T_k 按 μ^{−k} 增长，先在有理数上按列缩放再转浮点。

    Args:
        E (MinkowskiEllipsoid): 椭球与焦散参数
        n (int): 周期

    Returns:
        float: 非负标量
    """
    return scaled_min_singular_value(_exact_matrix(E, n))


def _signed_determinant(E, n):
    """按列缩放后的行列式：符号与零点不变，数值不溢出"""
    exact = _exact_matrix(E, n)
    det = determinant_exact(exact)
    for s in column_scales(exact):
        det /= s
    return float(det)


def _ellipsoid(a, mu_fixed, free_index, mu):
    mu_values = list(mu_fixed)
    mu_values.insert(free_index, mu)
    return MinkowskiEllipsoid(tuple(a), tuple(mu_values))


def find_periodic_caustic(a, n, bracket, mu_fixed=(), free_index=0, samples=SCAN_SAMPLES, verify=True, seed=None):
    """
    在区间内搜索使 n 周期判据成立的自由焦散参数

    d = 2 时判据矩阵是方阵，用精确行列式的变号加 brentq；
    其余情形在采样网格的局部极小附近做有界一维极小化。

    Args:
        a: a_0..a_d
        n (int): 周期
        bracket: (lo, hi) 开区间
        mu_fixed: 其余 d−2 个固定的焦散参数
        free_index (int): 自由参数在 μ 中的位置
        samples (int): 网格点数
        verify (bool): 用弦台球模拟复核闭合，未闭合的根被丢弃
        seed: 复核时的随机种子

    Returns:
        list: 升序排列的 μ*

    Raises:
        NoRootInBracket: 区间内没有满足条件的根
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise NoRootInBracket(f"区间 ({lo}, {hi}) 为空")
    d = len(a) - 1
    if len(mu_fixed) != d - 2:
        raise BadParameter('mu_fixed', f"需要固定 d−2 = {d - 2} 个焦散参数")

    margin = 1e-9 * (hi - lo)
    grid = np.linspace(lo + margin, hi - margin, samples)
    excluded = [float(v) for v in a] + [float(v) for v in mu_fixed] + [0.0]

    def usable(mu):
        return all(abs(mu - v) > 1e-9 * max(1.0, abs(v)) for v in excluded)

    grid = [mu for mu in grid if usable(mu)]
    roots = []
    if d == 2:
        def det(mu):
            return _signed_determinant(_ellipsoid(a, mu_fixed, free_index, mu), n)

        values = [det(mu) for mu in grid]
        for (m0, v0), (m1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
            if v0 == 0.0:
                roots.append(m0)
            elif v0 * v1 < 0 and all(not (m0 < e < m1) for e in excluded):
                roots.append(optimize.brentq(det, m0, m1, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    else:
        def indicator(mu):
            return period_indicator(_ellipsoid(a, mu_fixed, free_index, mu), n)

        values = [indicator(mu) for mu in grid]
        for k in range(1, len(grid) - 1):
            if values[k] <= values[k - 1] and values[k] <= values[k + 1]:
                res = optimize.minimize_scalar(
                    indicator, bounds=(grid[k - 1], grid[k + 1]), method='bounded',
                    options={'xatol': 1e-14},
                )
                roots.append(float(res.x))

    found = []
    for mu in sorted(roots):
        value = period_indicator(_ellipsoid(a, mu_fixed, free_index, mu), n)
        if value < INDICATOR_TOL and all(abs(mu - other) > 1e-9 for other in found):
            found.append(mu)
        else:
            _logger.debug("丢弃候选 μ = %.15g (indicator = %.3e)", mu, value)

    if verify:
        checked = []
        for mu in found:
            residual = caustic_closure_residual(_ellipsoid(a, mu_fixed, free_index, mu), n, seed=seed)
            if residual < CLOSURE_EPS:
                checked.append(mu)
            else:
                _logger.warning("μ = %.15g 未通过闭合复核 (残差 %.3e)", mu, residual)
        found = checked

    if not found:
        raise NoRootInBracket(f"区间 ({lo}, {hi}) 内没有 {n} 周期焦散")
    _logger.info("找到 %d 个 %d 周期焦散参数: %s", len(found), n, found)
    return found
