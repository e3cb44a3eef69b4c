# -*- coding: utf-8 -*-
"""
层级检验报告

对给定 (d, k) 在随机状态上统计：
    involution    - {J_i^k, J_j^k} 的最大绝对值
    conservation  - 沿 g_k 测地线单位时间内 J_i^k 的最大相对漂移
    reflection    - 边界反射前后 J_i^k 的最大相对差
    independence  - 梯度矩阵（行归一化）的最小奇异值
随机种子写入报告。
"""

import logging
from fractions import Fraction

import numpy as np

from billiards.config import default_seed
from billiards.confocal.family import ConfocalFamily, BoundaryQuadric
from billiards.dynamics.flow import geodesic_flow
from billiards.dynamics.reflection import reflect
from billiards.dynamics.state import PhasePoint
from billiards.hierarchy.integrals import JIntegral, poisson_bracket, independence_measure
from billiards.hierarchy.metrics import HierarchyMetric
from billiards.hierarchy.tensors import HierarchyContext

_logger = logging.getLogger(__name__)

DEFAULT_BOUNDARIES = {
    2: ((Fraction(2), Fraction(1)), Fraction(1, 2)),
    3: ((Fraction(3), Fraction(2), Fraction(1)), Fraction(1, 2)),
    4: ((Fraction(4), Fraction(3), Fraction(2), Fraction(1)), Fraction(1, 2)),
}


def default_boundary(d):
    b, c = DEFAULT_BOUNDARIES[d]
    return BoundaryQuadric(ConfocalFamily(b), c)


def random_interior_state(boundary, rng, p_scale=1.0):
    """Γ 内部的随机点与随机动量"""
    d = boundary.d
    axes = np.sqrt(boundary.axes_squared())
    u = rng.normal(size=d)
    u /= np.linalg.norm(u)
    x = axes * u * rng.uniform(0.05, 0.9)
    return PhasePoint(x, p_scale * rng.normal(size=d))


def random_boundary_state(boundary, rng):
    """Γ 上的随机点与指向外侧的随机动量"""
    d = boundary.d
    axes = np.sqrt(boundary.axes_squared())
    u = rng.normal(size=d)
    x = boundary.project(axes * u / np.linalg.norm(u))
    p = rng.normal(size=d)
    n = boundary.normal(x)
    if p @ n < 0:
        p = p - 2.0 * (p @ n) / (n @ n) * n
    return PhasePoint(x, p)


def involution_residual(ctx, state):
    integrals = [JIntegral(ctx, i) for i in range(ctx.d)]
    worst = 0.0
    for i in range(ctx.d):
        for j in range(i + 1, ctx.d):
            worst = max(worst, abs(poisson_bracket(integrals[i], integrals[j], state)))
    return worst


def reflection_residual(ctx, boundary, state):
    p_out = reflect(boundary, None, state.x, state.p)
    worst = 0.0
    for i in range(ctx.d):
        J = JIntegral(ctx, i)
        before = J.value(state.x, state.p)
        after = J.value(state.x, p_out)
        worst = max(worst, abs(after - before) / max(1.0, abs(before)))
    return worst


def conservation_drift(ctx, state, t_end=1.0, tol=1e-9):
    path = geodesic_flow(HierarchyMetric(ctx), state, t_end, tol, samples=41)
    worst = 0.0
    for i in range(ctx.d):
        J = JIntegral(ctx, i)
        values = np.array([J.value(x, p) for x, p in zip(path.x, path.p)])
        worst = max(worst, float(np.max(np.abs(values - values[0]))) / max(1.0, abs(values[0])))
    return worst


def hierarchy_report(d, k, seed=None, samples=1000, flow_samples=4, boundary=None):
    """
    生成 (d, k) 的层级检验报告

    Args:
        d (int): 维数
        k (int): 层级指标
        seed: 随机种子，默认取配置
        samples (int): 括号与反射检验的样本数
        flow_samples (int): 测地线积分的样本数
        boundary (BoundaryQuadric): 默认使用内置的边界

    Returns:
        dict: 各项最大残差与所用种子
    """
    seed = default_seed() if seed is None else seed
    boundary = boundary or default_boundary(d)
    ctx = HierarchyContext(boundary.family, k)
    rng = np.random.default_rng(seed)
    _logger.info("层级检验: d = %d, k = %d, seed = %d", d, k, seed)

    involution = 0.0
    independence = np.inf
    for _ in range(samples):
        state = random_interior_state(boundary, rng)
        involution = max(involution, involution_residual(ctx, state))
        independence = min(independence, independence_measure([JIntegral(ctx, i) for i in range(d)], state))

    reflection = 0.0
    for _ in range(samples):
        reflection = max(reflection, reflection_residual(ctx, boundary, random_boundary_state(boundary, rng)))

    conservation = 0.0
    for _ in range(flow_samples):
        state = random_interior_state(boundary, rng, p_scale=0.05)
        conservation = max(conservation, conservation_drift(ctx, state))

    return {
        'd': d,
        'k': k,
        'seed': seed,
        'samples': samples,
        'involution': involution,
        'conservation': conservation,
        'reflection': reflection,
        'independence': float(independence),
    }
