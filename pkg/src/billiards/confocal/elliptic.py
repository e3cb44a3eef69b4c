# -*- coding: utf-8 -*-
"""
椭圆坐标的正变换与逆变换

λ 是 γ(λ) = Σ x_i²/(b_i − λ) = 1 的 d 个根；清分母后得到 d 次多项式
    Φ(λ) = ∏(b_i − λ) − Σ x_i² ∏_{j≠i}(b_j − λ)
每个交错区间 (b_{i+1}, b_i) 恰有一个单根，最后一个根位于 (b_d − |x|² − 1, b_d)。
"""

import logging
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial
from scipy import optimize

from billiards.confocal.family import EllipticCoords
from billiards.errors import DegenerateChart, InterlacingViolated
from billiards.exact import is_exact

_logger = logging.getLogger(__name__)


def chart_polynomial(family, x):
    """
    构造清分母后的多项式 Φ(λ)

    Args:
        family (ConfocalFamily): 共焦族
        x: 点坐标

    Returns:
        numpy.polynomial.Polynomial: 浮点系数的 Φ
    """
    b = family.b_array()
    x = np.asarray(x, dtype=float)
    factors = [Polynomial([bi, -1.0]) for bi in b]
    phi = Polynomial([1.0])
    for factor in factors:
        phi = phi * factor
    for i in range(family.d):
        term = Polynomial([x[i] ** 2])
        for j, factor in enumerate(factors):
            if j != i:
                term = term * factor
        phi = phi - term
    return phi


def _brackets(family, x):
    b = family.b_array()
    spread = float(np.sum(np.asarray(x, dtype=float) ** 2)) + 1.0
    pairs = [(b[i + 1], b[i]) for i in range(family.d - 1)]
    pairs.append((b[-1] - spread, b[-1]))
    return pairs


def _isolate(phi, lo, hi):
    """先二分缩小区间，再用 Newton 迭代精化"""
    dphi = phi.deriv()
    width = hi - lo
    coarse = optimize.bisect(phi, lo, hi, xtol=width * 1e-6)
    try:
        root = optimize.newton(phi, coarse, fprime=dphi, tol=1e-15, maxiter=50)
    except RuntimeError:
        root = coarse
    if not (lo < root < hi):
        _logger.debug("Newton 离开区间 (%g, %g)，改用 brentq", lo, hi)
        root = optimize.brentq(phi, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return float(root)


def to_elliptic(family, x, allow_degenerate=False):
    """
    笛卡尔坐标 → 椭圆坐标

    Args:
        family (ConfocalFamily): 严格的共焦族
        x: 点坐标
        allow_degenerate (bool): 为 True 时允许坐标为 0 的点，结果标记为退化

    Returns:
        EllipticCoords: 降序排列的 λ

    Raises:
        NonStrictFamily: b 有重复
        DegenerateChart: 某个 x_i = 0 且未允许退化
    """
    family.require_strict()
    x = np.asarray([float(v) for v in x])
    if np.any(x == 0.0):
        if not allow_degenerate:
            raise DegenerateChart(f"点 {tuple(x)} 位于对称超平面上，椭圆坐标与 b 重合")
        roots = np.sort(np.real(chart_polynomial(family, x).roots()))[::-1]
        return EllipticCoords(tuple(float(r) for r in roots), degenerate=True)

    phi = chart_polynomial(family, x)
    lam = tuple(_isolate(phi, lo, hi) for lo, hi in _brackets(family, x))
    return EllipticCoords(lam)


def check_interlacing(family, lam, strict=True):
    """
    检查 b_1 > λ_1 > b_2 > ... > b_d > λ_d

    Args:
        strict (bool): False 时允许端点相等（对称超平面上的点）

    Raises:
        InterlacingViolated: 交错关系不成立
    """
    b = family.b
    for i, value in enumerate(lam):
        upper = b[i]
        lower = b[i + 1] if i + 1 < len(b) else None
        if strict:
            ok = value < upper and (lower is None or value > lower)
        else:
            ok = value <= upper and (lower is None or value >= lower)
        if not ok:
            raise InterlacingViolated(f"λ_{i + 1} = {float(value):.6g} 不满足与 b 的交错关系")


def squares_from_elliptic(family, lam):
    """
    乘积公式 x_i² = ∏_j(b_i − λ_j) / ∏_{j≠i}(b_i − b_j)

    输入全部精确时返回 Fraction。
    """
    b = family.b
    if not (family.exact and is_exact(list(lam))):
        b = family.b_array()
        lam = np.asarray([float(v) for v in lam])
    squares = []
    for i in range(family.d):
        num = 1 if is_exact(b[i]) else 1.0
        den = 1 if is_exact(b[i]) else 1.0
        for j in range(family.d):
            num = num * (b[i] - lam[j])
            if j != i:
                den = den * (b[i] - b[j])
        squares.append(Fraction(num) / den if is_exact(num) else num / den)
    return squares


def from_elliptic(family, lam, signs=None, strict=True):
    """
    椭圆坐标 → 笛卡尔坐标

    Args:
        family (ConfocalFamily): 严格的共焦族
        lam: EllipticCoords 或 λ 序列
        signs: 每个坐标的符号（±1），默认全部为正
        strict (bool): False 时允许 λ 落在区间端点

    Returns:
        numpy.ndarray: 点坐标

    Raises:
        InterlacingViolated: λ 不交错
    """
    family.require_strict()
    if isinstance(lam, EllipticCoords):
        lam = lam.lam
    lam = tuple(lam)
    check_interlacing(family, lam, strict=strict)
    squares = np.array([float(v) for v in squares_from_elliptic(family, lam)])
    squares = np.clip(squares, 0.0, None)
    x = np.sqrt(squares)
    if signs is not None:
        x = x * np.array([1.0 if s > 0 else -1.0 for s in signs])
    return x
