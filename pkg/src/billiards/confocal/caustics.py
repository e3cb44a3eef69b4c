# -*- coding: utf-8 -*-
"""
直线的焦散二次曲面 (Chasles 定理)

直线 x0 + s·v 与 Q_μ 相切的判别式乘以 ∏(b_l − μ) 后是 μ 的 d−1 次多项式
    R(μ) = Σ_i v_i² ∏_{l≠i}(b_l − μ) − Σ_{i<j} (x0_i v_j − x0_j v_i)² ∏_{l≠i,j}(b_l − μ)
其首项系数为 (−1)^{d−1}|v|²，故次数恰为 d−1。直线位于对称超平面 x_i = 0 时
R 含因子 (b_i − μ)，对应的根标记为退化。
"""

import logging
from fractions import Fraction

import numpy as np

from billiards.confocal.elliptic import from_elliptic, to_elliptic
from billiards.confocal.family import CausticSet
from billiards.errors import DegenerateLine, OutsideModel
from billiards.exact import is_exact

_logger = logging.getLogger(__name__)


def _poly_mul(p, q):
    """升幂系数列表相乘（Fraction 与 float 通用）"""
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _poly_add(p, q, scale=1):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return [a + scale * b for a, b in zip(p, q)]


def _product(values, skip):
    poly = [1]
    for index, value in enumerate(values):
        if index not in skip:
            poly = _poly_mul(poly, [value, -1])
    return poly


def caustic_polynomial(family, x0, v):
    """
    清分母后的焦散多项式，归一化为首一多项式

    Args:
        family (ConfocalFamily): 共焦族
        x0: 直线上一点
        v: 方向

    Returns:
        list: 降幂排列的首一系数；输入全部精确时为 Fraction

    Raises:
        DegenerateLine: v = 0
    """
    exact = family.exact and is_exact(list(x0)) and is_exact(list(v))
    if exact:
        b = [Fraction(t) for t in family.b]
        x0 = [Fraction(t) for t in x0]
        v = [Fraction(t) for t in v]
    else:
        b = [float(t) for t in family.b]
        x0 = [float(t) for t in x0]
        v = [float(t) for t in v]
    if all(t == 0 for t in v):
        raise DegenerateLine("方向向量为零")

    d = family.d
    poly = [0]
    for i in range(d):
        poly = _poly_add(poly, [v[i] ** 2 * c for c in _product(b, {i})])
    for i in range(d):
        for j in range(i + 1, d):
            cross = (x0[i] * v[j] - x0[j] * v[i]) ** 2
            if cross != 0:
                poly = _poly_add(poly, [cross * c for c in _product(b, {i, j})], scale=-1)
    poly = poly[:d]
    lead = poly[-1]
    return [c / lead for c in reversed(poly)]


def line_caustics(family, x0, v, strict=False):
    """
    直线的 d−1 个焦散参数

    Args:
        family (ConfocalFamily): 共焦族
        x0: 直线上一点
        v: 方向
        strict (bool): 为 True 时直线位于对称超平面上抛出 DegenerateLine

    Returns:
        CausticSet: 降序参数、退化标记与多项式

    Raises:
        DegenerateLine: v = 0，或 strict 且直线位于对称超平面
    """
    coeffs = caustic_polynomial(family, x0, v)
    if len(coeffs) == 2:
        roots = [-coeffs[1]]
    else:
        roots = [float(r) for r in np.real(np.roots([float(c) for c in coeffs]))]
    roots = sorted(roots, reverse=True)

    # 直线位于 x_i = 0 超平面时，离 b_i 最近的根是退化的超平面焦散
    flags = [False] * len(roots)
    for i in range(family.d):
        if x0[i] == 0 and v[i] == 0:
            nearest = min(range(len(roots)), key=lambda k: abs(float(roots[k]) - float(family.b[i])))
            flags[nearest] = True
    if strict and any(flags):
        raise DegenerateLine(f"直线位于对称超平面内，焦散参数 {roots}")
    return CausticSet(tuple(roots), tuple(flags), tuple(coeffs))


def tangent_direction(boundary, x0, caustics, signs=None):
    """
    过 x0 且与给定 d−1 个共焦焦散相切的单位方向

    在椭圆坐标中，直线与焦散 t_1..t_{d−1} 相切时，方向沿第 j 个坐标面单位法向的分量满足
        ⟨ν_j, v⟩² ∝ (−1)^{d−1} ∏_k(λ_j − t_k) / (∏_l(b_l − λ_j) |n_j|²),  n_j = D_{λ_j} x0
    各分量符号可自由选取；x0 在 Γ 上时最后一个分量取为指向内部。

    Args:
        boundary (BoundaryQuadric): 台球边界
        x0: 起点（坐标均不为零）
        caustics: d−1 个焦散参数
        signs: 前 d−1 个法向分量的符号，默认全部为正

    Returns:
        numpy.ndarray: 单位方向

    Raises:
        OutsideModel: x0 不在以这些焦散为边界的可达区域
    """
    family = boundary.family
    x0 = np.asarray(x0, dtype=float)
    t = np.array([float(v) for v in caustics])
    lam = to_elliptic(family, x0).as_array()
    b = family.b_array()
    d = family.d

    direction = np.zeros(d)
    for j in range(d):
        normal = x0 / (b - lam[j])
        weight = (-1) ** (d - 1) * np.prod(lam[j] - t) / (np.prod(b - lam[j]) * normal.dot(normal))
        if weight < -1e-12:
            raise OutsideModel(f"点 {tuple(x0)} 处不存在与焦散 {tuple(t)} 相切的实直线")
        component = np.sqrt(max(weight, 0.0))
        if j < d - 1:
            sign = 1.0 if signs is None or signs[j] > 0 else -1.0
        else:
            # n_d 是 Γ 的外法向，内部满足 λ_d > c
            sign = -1.0
        direction += sign * component * normal / np.linalg.norm(normal)
    return direction / np.linalg.norm(direction)


def random_tangent_launch(boundary, caustics, rng):
    """
    在 Γ 上随机取点，并给出与焦散相切的入射方向

    Args:
        boundary (BoundaryQuadric): 台球边界
        caustics: 焦散参数
        rng (numpy.random.Generator): 随机数发生器

    Returns:
        tuple: (起点, 单位方向)
    """
    family = boundary.family
    b = family.b_array()
    c = float(boundary.c)
    t = np.sort(np.array([float(v) for v in caustics]))[::-1]
    d = family.d
    # 二重焦散 t 所在区间内的 λ_j 固定为 t（轨迹是 Q_t 的母线）
    pinned = {}
    for value in t:
        if np.sum(np.isclose(t, value, rtol=1e-12, atol=0.0)) >= 2:
            for j in range(d - 1):
                if b[j + 1] < value < b[j]:
                    pinned[j] = value
    for _ in range(1000):
        lam = []
        for j in range(d - 1):
            lo, hi = b[j + 1], b[j]
            lam.append(pinned.get(j, rng.uniform(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo))))
        lam.append(c)
        # 可达区域：每个 λ_j 上的权重非负
        weights = [(-1) ** (d - 1) * np.prod(lam[j] - t) / np.prod(b - lam[j]) for j in range(d)]
        if min(weights[j] for j in range(d) if j not in pinned) <= 0:
            continue
        signs = rng.choice([-1.0, 1.0], size=d)
        x0 = from_elliptic(family, lam, signs=signs)
        direction = tangent_direction(boundary, x0, t, signs=rng.choice([-1.0, 1.0], size=d - 1))
        return x0, direction
    raise OutsideModel(f"无法找到与焦散 {tuple(t)} 相切的发射点")


def generatrix_directions(boundary, x0, t):
    """
    过 Q_t 上一点 x0 的两条母线方向（二重焦散 (t, t)，d = 3）

    Args:
        boundary (BoundaryQuadric): 台球边界
        x0: 位于 Q_t 上的点
        t: 单叶双曲面参数 b_3 < t < b_2

    Returns:
        tuple: 两个单位方向，对应第一个法向分量取 ±
    """
    caustics = (t,) * (boundary.d - 1)
    return (
        tangent_direction(boundary, x0, caustics, signs=(1.0,) * (boundary.d - 1)),
        tangent_direction(boundary, x0, caustics, signs=(-1.0,) + (1.0,) * (boundary.d - 2)),
    )
