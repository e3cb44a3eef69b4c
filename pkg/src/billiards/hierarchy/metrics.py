# -*- coding: utf-8 -*-
"""
度量层级

    dg_k² = ⟨L^k dx, dx⟩          (euclidean_branch)
    dḡ_k² = ⟨Π L^k dx, dx⟩        (hyperbolic_branch)

L = B − x⊗x 在 Λ 内部正定，所以两支度量在 Λ 内部都正定。
求值器统一提供 matrix(x)、derivative(x)（形状 (d, d, d)，首个下标为 ∂/∂x_m）、
margin(x)（到定义域边界的余量）与 tag。
"""

import numpy as np

from billiards.confocal.metric import hyperbolic_metric_at, hyperbolic_metric_derivative
from billiards.errors import SingularL, BadParameter, EnergyBelowPotential
from billiards.hierarchy.tensors import HierarchyContext, inverse_power

EUCLIDEAN_BRANCH = 'euclidean_branch'
HYPERBOLIC_BRANCH = 'hyperbolic_branch'

# |1 − ⟨B⁻¹x, x⟩| 低于此值时视 L 为奇异
SINGULAR_TOL = 1e-14


def _check_L(ctx, x):
    if abs(ctx.family.model_f(x)) < SINGULAR_TOL:
        raise SingularL(f"L 在 {tuple(x)} 处奇异")


def _L_power(L, k):
    if k >= 0:
        return np.linalg.matrix_power(L, k)
    return inverse_power(L, -k)


def _dL(x, m):
    e = np.zeros(len(x))
    e[m] = 1.0
    return -(np.outer(e, x) + np.outer(x, e))


def L_power_derivative(L, x, k):
    """∂(L^k)/∂x_m，负 k 时对 L⁻¹ 求导"""
    d = len(x)
    out = np.zeros((d, d, d))
    if k == 0:
        return out
    base = L if k > 0 else inverse_power(L, 1)
    q = abs(k)
    powers = [np.linalg.matrix_power(base, j) for j in range(q)]
    for m in range(d):
        dbase = _dL(x, m) if k > 0 else -base @ _dL(x, m) @ base
        out[m] = sum(powers[j] @ dbase @ powers[q - 1 - j] for j in range(q))
    return out


def metric_at(ctx, x, which=EUCLIDEAN_BRANCH):
    """
    层级中的度量矩阵

    Args:
        ctx (HierarchyContext): 层级上下文
        x: 点坐标
        which: euclidean_branch 或 hyperbolic_branch

    Returns:
        numpy.ndarray: 对称矩阵

    Raises:
        SingularL: k < 0 且 L 奇异
        OutsideModel: 双曲支且 x 不在 Λ 内部
    """
    x = np.asarray(x, dtype=float)
    if ctx.k < 0:
        _check_L(ctx, x)
    power = _L_power(ctx.L(x), ctx.k)
    if which == EUCLIDEAN_BRANCH:
        return power
    if which == HYPERBOLIC_BRANCH:
        return hyperbolic_metric_at(ctx.family, x) @ power
    raise BadParameter('which', "只能是 euclidean_branch 或 hyperbolic_branch")


class EuclideanMetric:
    """欧氏度量"""

    euclidean = True
    tag = 'euclidean'

    def __init__(self, d):
        self.d = d

    def matrix(self, x):
        return np.eye(self.d)

    def derivative(self, x):
        return np.zeros((self.d, self.d, self.d))


class HierarchyMetric:
    """
    g_k 或 ḡ_k 的求值器

    Args:
        ctx (HierarchyContext): 层级上下文
        which: euclidean_branch 或 hyperbolic_branch
    """

    euclidean = False

    def __init__(self, ctx, which=EUCLIDEAN_BRANCH):
        if which not in (EUCLIDEAN_BRANCH, HYPERBOLIC_BRANCH):
            raise BadParameter('which', "只能是 euclidean_branch 或 hyperbolic_branch")
        self.ctx = ctx
        self.which = which
        prefix = 'g' if which == EUCLIDEAN_BRANCH else 'gbar'
        self.tag = f'{prefix}_{ctx.k}'
        self.euclidean = which == EUCLIDEAN_BRANCH and ctx.k == 0

    def matrix(self, x):
        G = metric_at(self.ctx, x, self.which)
        return 0.5 * (G + G.T)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        L = self.ctx.L(x)
        dpower = L_power_derivative(L, x, self.ctx.k)
        if self.which == EUCLIDEAN_BRANCH:
            out = dpower
        else:
            power = _L_power(L, self.ctx.k)
            pi = hyperbolic_metric_at(self.ctx.family, x)
            dpi = hyperbolic_metric_derivative(self.ctx.family, x)
            out = np.einsum('mij,jk->mik', dpi, power) + np.einsum('ij,mjk->mik', pi, dpower)
        return 0.5 * (out + np.transpose(out, (0, 2, 1)))

    def margin(self, x):
        if self.euclidean:
            return np.inf
        return self.ctx.family.model_f(x)


def hyperbolic_metric(family):
    """Π 本身，即 k = 0 的 hyperbolic_branch"""
    return HierarchyMetric(HierarchyContext(family, 0), HYPERBOLIC_BRANCH)


class ScaledMetric:
    """(h − V(x))·g 的求值器"""

    euclidean = False

    def __init__(self, base, V, h):
        self.base = base
        self.V = V
        self.h = float(h)
        self.tag = f'maupertuis({getattr(base, "tag", "euclidean")})'

    def factor(self, x):
        value = self.h - float(self.V.value(x))
        if value <= 0:
            raise EnergyBelowPotential(f"h = {self.h} 不高于 V({tuple(np.asarray(x, dtype=float))}) = {self.h - value}")
        return value

    def matrix(self, x):
        return self.factor(x) * self.base.matrix(x)

    def derivative(self, x):
        s = self.factor(x)
        grad = np.asarray(self.V.gradient(x), dtype=float)
        G = self.base.matrix(x)
        return -grad[:, None, None] * G[None, :, :] + s * self.base.derivative(x)

    def margin(self, x):
        base_margin = getattr(self.base, 'margin', None)
        own = self.h - float(self.V.value(x))
        return own if base_margin is None else min(own, base_margin(x))


def maupertuis_scale(metric, V, h):
    """
    Maupertuis 原理：能量 h 上的运动 ⇔ (h − V)·g 的测地线

    Args:
        metric: 度量求值器
        V: 势求值器
        h (float): 能量

    Returns:
        ScaledMetric: 逐点缩放后的度量
    """
    return ScaledMetric(metric, V, h)
