# -*- coding: utf-8 -*-
"""
测地流与势场中的台球运动

H = ½ g⁻¹(p, p) + V(x)
    ẋ = G⁻¹p
    ṗ = ½ wᵀ(∂G)w − ∇V,   w = G⁻¹p
积分器为 scipy 的 DOP853（自适应步长）。
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from billiards.config import BOUNDARY_TOL
from billiards.dynamics.chords import trace_chords
from billiards.dynamics.reflection import reflect
from billiards.dynamics.state import PhasePoint, Bounce, Trajectory
from billiards.errors import LeftModel, BadParameter
from billiards.hierarchy.metrics import EuclideanMetric, hyperbolic_metric, maupertuis_scale

_logger = logging.getLogger(__name__)

# 距离 Λ 边界的最小 f 值
MODEL_MARGIN = 1e-12


@dataclass(frozen=True)
class PathSamples:
    """测地流的采样结果"""

    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    energy: np.ndarray

    @property
    def energy_drift(self):
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def arc_length(self):
        return float(np.sum(np.linalg.norm(np.diff(self.x, axis=0), axis=1)))


def _is_euclidean(metric):
    return metric is None or getattr(metric, 'euclidean', False)


def hamiltonian(metric, V, x, p):
    """H = ½ g⁻¹(p, p) + V(x)"""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if _is_euclidean(metric):
        kinetic = 0.5 * float(p @ p)
    else:
        kinetic = 0.5 * float(p @ np.linalg.solve(metric.matrix(x), p))
    return kinetic + (float(V.value(x)) if V is not None else 0.0)


def _rhs(metric, V, d):
    def rhs(t, y):
        x, p = y[:d], y[d:]
        if _is_euclidean(metric):
            w = p
            pdot = np.zeros(d)
        else:
            w = np.linalg.solve(metric.matrix(x), p)
            pdot = 0.5 * np.einsum('i,mij,j->m', w, metric.derivative(x), w)
        if V is not None:
            pdot = pdot - np.asarray(V.gradient(x), dtype=float)
        return np.concatenate([w, pdot])
    return rhs


def _model_event(metric):
    margin = getattr(metric, 'margin', None)
    if margin is None:
        return None

    def left(t, y):
        return margin(y[:len(y) // 2]) - MODEL_MARGIN
    left.terminal = True
    left.direction = -1
    return left


def geodesic_flow(metric, start, t_end, tol, samples=201):
    """
    积分度量 metric 的测地流

    Args:
        metric: 度量求值器；None 或欧氏度量时直接给出直线
        start (PhasePoint): 初始状态
        t_end (float): 积分时长
        tol (float): 相对误差容限
        samples (int): 采样点数

    Returns:
        PathSamples: 时间、位置、动量、能量

    Raises:
        LeftModel: 双曲度量下路径到达 f ≤ 0
    """
    if tol <= 0:
        raise BadParameter('tol', "需要 tol > 0")
    t = np.linspace(0.0, t_end, samples)
    d = start.d
    if _is_euclidean(metric):
        x = start.x[None, :] + t[:, None] * start.p[None, :]
        p = np.repeat(start.p[None, :], samples, axis=0)
        energy = np.full(samples, 0.5 * float(start.p @ start.p))
        return PathSamples(t, x, p, energy)

    events = [e for e in (_model_event(metric),) if e is not None]
    sol = solve_ivp(
        _rhs(metric, None, d), (0.0, t_end), np.concatenate([start.x, start.p]),
        method='DOP853', rtol=tol, atol=tol * 1e-3, t_eval=t, events=events or None,
    )
    if sol.status == 1:
        raise LeftModel(f"测地线在 t = {sol.t_events[0][0]:.6g} 到达 Λ 的边界")
    if not sol.success:
        raise LeftModel(f"积分失败: {sol.message}")
    x = sol.y[:d].T
    p = sol.y[d:].T
    energy = np.array([hamiltonian(metric, None, xi, pi) for xi, pi in zip(x, p)])
    _logger.debug("测地流: t_end = %g, 能量漂移 %.3e", t_end, float(np.max(np.abs(energy - energy[0]))))
    return PathSamples(sol.t, x, p, energy)


def trace_with_potential(boundary, metric, V, start, n_bounces, tol, max_time=50.0):
    """
    度量 metric 与势 V 下的台球运动

    Args:
        boundary (BoundaryQuadric): 台球边界
        metric: 度量求值器（None 为欧氏度量）
        V: 势求值器（提供 value / gradient），None 表示无势
        start (PhasePoint): 初始状态
        n_bounces (int): 碰撞次数
        tol (float): 积分容限
        max_time (float): 两次碰撞之间的最长积分时间

    Returns:
        Trajectory: 碰撞序列，energy_samples 记录每次碰撞时的 H

    Raises:
        LeftModel: 离开模型或在 max_time 内未到达 Γ
        GrazingSegment: 掠射
    """
    d = start.d
    rhs = _rhs(metric, V, d)

    def hit(t, y):
        return boundary.value(y[:d]) - 1.0
    hit.terminal = True
    hit.direction = 1

    events = [hit]
    left = _model_event(metric)
    if left is not None:
        events.append(left)

    energy = hamiltonian(metric, V, start.x, start.p)
    on_boundary = abs(boundary.value(start.x) - 1.0) <= BOUNDARY_TOL
    traj = Trajectory(
        start, metric_tag=getattr(metric, 'tag', 'euclidean'), energy=energy, start_on_boundary=on_boundary,
    )
    y = np.concatenate([start.x, start.p])
    for k in range(n_bounces):
        sol = solve_ivp(rhs, (0.0, max_time), y, method='DOP853', rtol=tol, atol=tol * 1e-3, events=events)
        if len(events) > 1 and len(sol.t_events[1]):
            raise LeftModel(f"第 {k + 1} 段轨迹离开模型")
        if not len(sol.t_events[0]):
            raise LeftModel(f"第 {k + 1} 段轨迹在 t = {max_time} 内没有到达 Γ")
        state = sol.y_events[0][0]
        x = boundary.project(state[:d])
        p_in = state[d:]
        p_out = reflect(boundary, metric, x, p_in)
        traj.bounces.append(Bounce(x, p_in, p_out))
        traj.energy_samples.append(hamiltonian(metric, V, x, p_out))
        y = np.concatenate([x, p_out])
    _logger.debug("势场台球: %d 次碰撞, 能量漂移 %.3e", n_bounces, traj.energy_drift())
    return traj


def distance_to_line(points, x0, v):
    """点集到直线 x0 + s·v 的最大距离"""
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    rel = np.asarray(points, dtype=float) - np.asarray(x0, dtype=float)
    perp = rel - np.outer(rel @ v, v)
    return float(np.max(np.linalg.norm(perp, axis=1)))


def distance_to_polyline(points, polyline):
    """点集到折线的最大距离"""
    polyline = np.asarray(polyline, dtype=float)
    starts, ends = polyline[:-1], polyline[1:]
    seg = ends - starts
    seg_len2 = np.maximum(np.sum(seg * seg, axis=1), 1e-300)
    worst = 0.0
    for q in np.asarray(points, dtype=float):
        s = np.clip(np.sum((q - starts) * seg, axis=1) / seg_len2, 0.0, 1.0)
        nearest = starts + s[:, None] * seg
        worst = max(worst, float(np.min(np.linalg.norm(q - nearest, axis=1))))
    return worst


def maupertuis_comparison(metric, V, start, t_end, tol, samples=2001):
    """
    比较 H_0 + V 在能量 h 上的轨道与度量 (h − V)·g 的测地线（作为点集）

    Args:
        metric: 度量求值器（None 为欧氏度量）
        V: 势求值器
        start (PhasePoint): 初始状态，h = H(start)
        t_end (float): 第一条路径的积分时长
        tol (float): 积分容限

    Returns:
        float: 第二条路径到第一条路径的最大距离
    """
    base = metric if metric is not None else EuclideanMetric(start.d)
    h = hamiltonian(base, V, start.x, start.p)
    d = start.d
    t = np.linspace(0.0, t_end, samples)
    first = solve_ivp(
        _rhs(base, V, d), (0.0, t_end), np.concatenate([start.x, start.p]),
        method='DOP853', rtol=tol, atol=tol * 1e-3, t_eval=t,
    )
    reference = first.y[:d].T
    length = float(np.sum(np.linalg.norm(np.diff(reference, axis=0), axis=1)))

    scaled = maupertuis_scale(base, V, h)
    p_scaled = (h - float(V.value(start.x))) * start.p
    horizon = t_end
    while True:
        path = geodesic_flow(scaled, PhasePoint(start.x, p_scaled), horizon, tol, samples=samples)
        steps = np.linalg.norm(np.diff(path.x, axis=0), axis=1)
        covered = np.concatenate([[0.0], np.cumsum(steps)])
        if covered[-1] >= length or horizon > 64 * t_end:
            break
        horizon *= 2.0
    arc = path.x[covered <= length]
    return distance_to_polyline(arc, reference)


def compare_models(boundary, x0, v0, n_bounces, tol):
    """
    同一初始条件下的弦台球与双曲测地线台球，比较碰撞点序列

    两者只差一个重新参数化，碰撞点应当逐个重合。

    Args:
        boundary (BoundaryQuadric): 台球边界
        x0: 起点
        v0: 起始方向
        n_bounces (int): 碰撞次数
        tol (float): 测地线积分容限

    Returns:
        dict: 逐次碰撞点的最大距离与两条轨迹
    """
    x0 = np.asarray(x0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    chords = trace_chords(boundary, x0, v0, n_bounces, record_caustics=False)
    metric = hyperbolic_metric(boundary.family)
    # ẋ = G⁻¹p 在起点等于 v0
    p0 = metric.matrix(x0) @ v0
    geodesic = trace_with_potential(boundary, metric, None, PhasePoint(x0, p0), n_bounces, tol)
    gaps = np.linalg.norm(chords.points() - geodesic.points(), axis=1)
    _logger.info("模型对照: %d 次碰撞, 最大偏差 %.3e", n_bounces, float(np.max(gaps)))
    return {
        'max_distance': float(np.max(gaps)),
        'chord': chords,
        'geodesic': geodesic,
    }
