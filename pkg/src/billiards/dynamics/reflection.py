# -*- coding: utf-8 -*-
"""
台球反射律

给定度量 g，在边界点 x 处
    p_+ = p_− − 2 g⁻¹(p_−, n)/g⁻¹(n, n) · n,   n = ∇(Σ x_i²/(b_i − c))/2
|p_+|_g = |p_−|_g，且 p_+ − p_− 与 Γ 的法向余向量成比例。
在椭圆坐标中同一个映射只改变 p_{λ_d} 的符号，与层级中的度量无关。
"""

import logging

import numpy as np

from billiards.confocal.elliptic import to_elliptic
from billiards.config import GRAZING_TOL, BOUNDARY_TOL
from billiards.errors import TangentialImpact, OutsideModel

_logger = logging.getLogger(__name__)


def _inverse_metric(metric, x):
    if metric is None:
        return np.eye(len(x))
    return np.linalg.inv(metric.matrix(x))


def transversality(g_inv, p, n):
    """g⁻¹(p, n) / sqrt(g⁻¹(p, p) g⁻¹(n, n))"""
    return float(p @ g_inv @ n / np.sqrt((p @ g_inv @ p) * (n @ g_inv @ n)))


def _require_on_boundary(boundary, x):
    gap = boundary.value(x) - 1.0
    if abs(gap) > BOUNDARY_TOL:
        raise OutsideModel(f"反射点不在 Γ 上 (偏差 {gap:.3e})")


def reflect(boundary, metric, x, p_minus):
    """
    按反射律计算出射动量

    Args:
        boundary (BoundaryQuadric): 台球边界
        metric: 度量求值器（提供 matrix(x)），None 表示欧氏度量
        x: 边界上的点
        p_minus: 入射动量

    Returns:
        numpy.ndarray: 出射动量 p_+

    Raises:
        TangentialImpact: 掠射（横截量 < 1e−12）
        OutsideModel: x 不在 Γ 上
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p_minus, dtype=float)
    _require_on_boundary(boundary, x)
    n = boundary.normal(x)
    g_inv = _inverse_metric(metric, x)
    measure = transversality(g_inv, p, n)
    if abs(measure) < GRAZING_TOL:
        raise TangentialImpact(f"在 {tuple(x)} 处掠射，横截量 {measure:.3e}")
    return p - 2.0 * (p @ g_inv @ n) / (n @ g_inv @ n) * n


def elliptic_jacobian(family, x, lam):
    """∂x_i/∂λ_j = x_i / (2(λ_j − b_i))"""
    b = family.b_array()
    return np.asarray(x, dtype=float)[:, None] / (2.0 * (np.asarray(lam)[None, :] - b[:, None]))


def reflect_elliptic(boundary, x, p_minus):
    """
    在椭圆坐标中反射：p_{λ_j} = Σ_i p_i ∂x_i/∂λ_j，只翻转 p_{λ_d}

    Args:
        boundary (BoundaryQuadric): 台球边界（λ_d = c）
        x: 边界上的点，坐标均不为零
        p_minus: 入射动量

    Returns:
        numpy.ndarray: 出射动量（笛卡尔分量）
    """
    x = np.asarray(x, dtype=float)
    _require_on_boundary(boundary, x)
    lam = to_elliptic(boundary.family, x).as_array()
    jac = elliptic_jacobian(boundary.family, x, lam)
    p_lam = jac.T @ np.asarray(p_minus, dtype=float)
    if abs(p_lam[-1]) < GRAZING_TOL * np.linalg.norm(p_lam):
        raise TangentialImpact(f"在 {tuple(x)} 处掠射")
    p_lam[-1] = -p_lam[-1]
    return np.linalg.solve(jac.T, p_lam)
