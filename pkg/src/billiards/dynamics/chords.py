# -*- coding: utf-8 -*-
"""
弦台球

欧氏度量下测地线是直线；Beltrami-Klein 模型中双曲测地线也是直线，
所以同一组弦同时给出双曲台球的点集轨迹。
"""

import logging

import numpy as np

from billiards.confocal.caustics import line_caustics
from billiards.config import BOUNDARY_TOL
from billiards.dynamics.reflection import reflect
from billiards.dynamics.state import PhasePoint, Bounce, Trajectory
from billiards.errors import OutsideModel, BadParameter, DegenerateLine

_logger = logging.getLogger(__name__)


def chord_parameter(boundary, x, v):
    """
    直线 x + s·v 与 Γ 的前向交点参数 s

    α s² + 2β s + γ = 0，用符号匹配的求根公式避免相消，取较大的根。
    """
    A = boundary.axes_squared()
    alpha = float(np.sum(v * v / A))
    beta = float(np.sum(x * v / A))
    gamma = float(np.sum(x * x / A)) - 1.0
    disc = max(beta * beta - alpha * gamma, 0.0)
    q = -(beta + np.copysign(np.sqrt(disc), beta))
    if q == 0.0:
        return 0.0
    return max(q / alpha, gamma / q)


def trace_chords(boundary, x0, v0, n_bounces, record_caustics=True):
    """
    从 x0 沿 v0 出发，记录 n_bounces 次碰撞

    Args:
        boundary (BoundaryQuadric): 台球边界
        x0: Γ 内或 Γ 上的起点
        v0: 初始方向
        n_bounces (int): 碰撞次数
        record_caustics (bool): 是否记录每段弦的焦散参数

    Returns:
        Trajectory: 弦台球轨迹，动量为单位方向

    Raises:
        OutsideModel: 起点在 Γ 外或在 Γ 上指向外部
        GrazingSegment: 掠射
    """
    x = np.asarray(x0, dtype=float)
    v = np.asarray(v0, dtype=float)
    if not np.any(v):
        raise DegenerateLine("初始方向为零")
    if n_bounces < 0:
        raise BadParameter('bounces', "碰撞次数必须 ≥ 0")
    value = boundary.value(x)
    if value > 1.0 + BOUNDARY_TOL:
        raise OutsideModel(f"起点 {tuple(x)} 在 Γ 外")
    on_boundary = abs(value - 1.0) <= BOUNDARY_TOL
    if on_boundary:
        x = boundary.project(x)
        if np.dot(v, boundary.normal(x)) >= 0:
            raise OutsideModel("起点在 Γ 上且方向指向外部")

    v = v / np.linalg.norm(v)
    traj = Trajectory(PhasePoint(x, v), metric_tag='chord', energy=0.5, start_on_boundary=on_boundary)
    for _ in range(n_bounces):
        if record_caustics:
            traj.segments.append(tuple(line_caustics(boundary.family, x, v).params))
        s = chord_parameter(boundary, x, v)
        if s <= 0.0:
            raise OutsideModel(f"从 {tuple(x)} 出发找不到前向交点")
        x = boundary.project(x + s * v)
        v_out = reflect(boundary, None, x, v)
        v_out = v_out / np.linalg.norm(v_out)
        traj.bounces.append(Bounce(x, v, v_out))
        v = v_out
    if record_caustics and n_bounces:
        traj.segments.append(tuple(line_caustics(boundary.family, x, v).params))
    _logger.debug("弦台球: %d 次碰撞, 焦散漂移 %.3e", n_bounces, traj.caustic_drift())
    return traj
