# -*- coding: utf-8 -*-
"""
周期闭合检测

残差 |x_n − x_0| + |p̂_n − p̂_0|，p̂ 为单位化的出射动量。
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from billiards.config import CLOSURE_EPS, default_seed
from billiards.confocal.caustics import random_tangent_launch
from billiards.confocal.minkowski import minkowski_to_klein
from billiards.dynamics.chords import trace_chords
from billiards.errors import BilliardsError, BadParameter

_logger = logging.getLogger(__name__)


def closure_residual(traj, n):
    """
    第 n 个状态与第 0 个状态的差

    Raises:
        BadParameter: 轨迹长度不足
    """
    states = traj.states()
    if len(states) <= n:
        raise BadParameter('n', f"轨迹只有 {len(states)} 个状态，无法检查 {n} 周期")
    x0, u0 = states[0]
    xn, un = states[n]
    return float(np.linalg.norm(xn - x0) + np.linalg.norm(un - u0))


def closure_check(traj, n, eps=CLOSURE_EPS):
    return closure_residual(traj, n) < eps


def caustic_closure_residual(E, n, c=1, seed=None):
    """
    把 E 映到 Klein 模型，随机取一条与焦散相切的弦发射，返回 n 次碰撞后的闭合残差

    Args:
        E (MinkowskiEllipsoid): 椭球与焦散参数
        n (int): 周期
        c: 边界平移参数
        seed: 随机种子，默认取配置中的种子
    """
    image = minkowski_to_klein(E, c)
    caustics = image.caustics(E.mu)
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    x0, v0 = random_tangent_launch(image.boundary, caustics, rng)
    traj = trace_chords(image.boundary, x0, v0, n, record_caustics=False)
    return closure_residual(traj, n)


@dataclass(frozen=True)
class OrbitCandidate:
    """search_periodic_orbits 找到的候选周期轨道"""

    x0: np.ndarray
    v0: np.ndarray
    residual: float

    def axis_deviation(self):
        """起点方向与最近坐标轴的夹角"""
        u = np.abs(self.x0) / np.linalg.norm(self.x0)
        return float(np.arccos(np.clip(np.max(u), -1.0, 1.0)))

    def plane_distance(self):
        """起点到最近对称超平面 x_i = 0 的距离"""
        return float(np.min(np.abs(self.x0)))


def _sphere(angles):
    """超球面角坐标 → 单位向量"""
    d = len(angles) + 1
    u = np.ones(d)
    for k, a in enumerate(angles):
        u[k] *= np.cos(a)
        u[k + 1:] *= np.sin(a)
    return u


def _launch(boundary, params):
    d = boundary.d
    axes = np.sqrt(boundary.axes_squared())
    x0 = boundary.project(axes * _sphere(params[:d - 1]))
    inward = -boundary.normal(x0)
    inward = inward / np.linalg.norm(inward)
    v0 = _sphere(params[d - 1:])
    # 方向限制在内侧半空间
    if v0 @ inward <= 0:
        v0 = v0 - 2.0 * (v0 @ inward) * inward
    return x0, v0


def search_periodic_orbits(boundary, n, samples=20, seed=None, threshold=1e-9):
    """
    从随机发射条件出发极小化闭合残差，寻找 n 周期轨道

    Args:
        boundary (BoundaryQuadric): 台球边界
        n (int): 周期
        samples (int): 随机起点个数
        seed: 随机种子
        threshold (float): 接受为周期轨道的残差上限

    Returns:
        list: OrbitCandidate，按残差升序
    """
    seed = default_seed() if seed is None else seed
    rng = np.random.default_rng(seed)
    _logger.info("周期轨道搜索: n = %d, 样本 %d, seed = %d", n, samples, seed)
    d = boundary.d

    def objective(params):
        try:
            x0, v0 = _launch(boundary, params)
            traj = trace_chords(boundary, x0, v0, n, record_caustics=False)
            return closure_residual(traj, n) ** 2
        except BilliardsError:
            return 1e3

    found = []
    for _ in range(samples):
        start = rng.uniform(0.0, 2.0 * np.pi, size=2 * (d - 1))
        res = optimize.minimize(
            objective, start, method='Nelder-Mead',
            options={'xatol': 1e-13, 'fatol': 1e-26, 'maxiter': 4000 * d},
        )
        residual = float(np.sqrt(res.fun))
        if residual < threshold:
            x0, v0 = _launch(boundary, res.x)
            found.append(OrbitCandidate(x0, v0, residual))
    found.sort(key=lambda c: c.residual)
    _logger.info("找到 %d 条 %d 周期候选轨道", len(found), n)
    return found
