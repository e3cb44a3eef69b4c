# -*- coding: utf-8 -*-
"""
Λ 内部的双曲度量 (Beltrami-Klein 模型)

    Π = (f B⁻¹ + u ⊗ u) / (det B · f²),   u = B⁻¹x,   f = 1 − Σ x_i²/b_i
"""

import numpy as np


def _pieces(family, x):
    x = np.asarray(x, dtype=float)
    f = family.require_inside(x)
    b = family.b_array()
    u = x / b
    return x, b, u, f, float(np.prod(b))


def hyperbolic_metric_at(family, x):
    """
    计算点 x 处的双曲度量矩阵 Π

    Args:
        family (ConfocalFamily): 共焦族（提供 B）
        x: Λ 内部的点

    Returns:
        numpy.ndarray: d×d 对称正定矩阵

    Raises:
        OutsideModel: f(x) ≤ 0
    """
    x, b, u, f, det_b = _pieces(family, x)
    return (f * np.diag(1.0 / b) + np.outer(u, u)) / (det_b * f ** 2)


def hyperbolic_metric_derivative(family, x):
    """
    Π 对坐标的偏导数

    Returns:
        numpy.ndarray: 形状 (d, d, d)，第一个下标 m 对应 ∂/∂x_m
    """
    x, b, u, f, det_b = _pieces(family, x)
    d = len(x)
    inv_b = np.diag(1.0 / b)
    core = f * inv_b + np.outer(u, u)
    out = np.empty((d, d, d))
    for m in range(d):
        df = -2.0 * x[m] / b[m]
        du = np.zeros(d)
        du[m] = 1.0 / b[m]
        dcore = df * inv_b + np.outer(du, u) + np.outer(u, du)
        out[m] = (-2.0 * df / f ** 3 * core + dcore / f ** 2) / det_b
    return out


def metric_identity_residual(family, x):
    """
    (det Π)^{1/(d+1)} Π⁻¹ 与 B − x⊗x 的最大相对偏差
    """
    x = np.asarray(x, dtype=float)
    pi = hyperbolic_metric_at(family, x)
    d = len(x)
    lhs = np.linalg.det(pi) ** (1.0 / (d + 1)) * np.linalg.solve(pi, np.eye(d))
    rhs = family.B() - np.outer(x, x)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)))
