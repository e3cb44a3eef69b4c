# -*- coding: utf-8 -*-
"""
第一积分与 Poisson 括号

    J_i^k(x, p) = ⟨S_i L^{−k} p, p⟩
    I_i^k = J_i^k + 2 f_i,   ∇f_i = S_i ∇V   (H = ½|p|² + V 时)
S_i 是 L 的多项式，与 L 可交换，所以 S_i L^{−k} 对称。
"""

import logging

import numpy as np

from billiards.errors import SingularL
from billiards.hierarchy.metrics import L_power_derivative, SINGULAR_TOL
from billiards.hierarchy.tensors import char_tensors, char_tensors_derivative, inverse_power

_logger = logging.getLogger(__name__)

# 有限差分步长
FD_STEP = 1e-6


class PhaseFunction:
    """相空间函数：value / grad_x / grad_p"""

    def value(self, x, p):
        raise NotImplementedError

    def grad_x(self, x, p):
        raise NotImplementedError

    def grad_p(self, x, p):
        raise NotImplementedError


class CoordinateFunction(PhaseFunction):
    """x_i 或 p_i"""

    def __init__(self, kind, index):
        self.kind = kind
        self.index = index

    def value(self, x, p):
        return float((x if self.kind == 'x' else p)[self.index])

    def grad_x(self, x, p):
        g = np.zeros(len(x))
        if self.kind == 'x':
            g[self.index] = 1.0
        return g

    def grad_p(self, x, p):
        g = np.zeros(len(p))
        if self.kind == 'p':
            g[self.index] = 1.0
        return g


def _inverse_power(ctx, L, x):
    """L^{−k}"""
    k = ctx.k
    if k > 0:
        if abs(ctx.family.model_f(x)) < SINGULAR_TOL:
            raise SingularL(f"L 在 {tuple(x)} 处奇异")
        return inverse_power(L, k)
    return np.linalg.matrix_power(L, -k)


class JIntegral(PhaseFunction):
    """
    J_i^k 及其解析梯度

    Args:
        ctx (HierarchyContext): 层级上下文
        i (int): 0 ≤ i ≤ d−1
    """

    def __init__(self, ctx, i):
        self.ctx = ctx
        self.i = i

    def _operator(self, x):
        x = np.asarray(x, dtype=float)
        L, S = char_tensors(self.ctx, x)
        return L, np.asarray(S[self.i], dtype=float) @ _inverse_power(self.ctx, L, x)

    def value(self, x, p):
        p = np.asarray(p, dtype=float)
        _, K = self._operator(x)
        return float(p @ K @ p)

    def grad_p(self, x, p):
        _, K = self._operator(x)
        return 2.0 * (0.5 * (K + K.T)) @ np.asarray(p, dtype=float)

    def grad_x(self, x, p):
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        L, S = char_tensors(self.ctx, x)
        Si = np.asarray(S[self.i], dtype=float)
        inv_power = _inverse_power(self.ctx, L, x)
        dS = char_tensors_derivative(self.ctx, x)
        # ∂(L^{−k}) = 以 −k 为指数的幂的导数
        dpower = L_power_derivative(L, x, -self.ctx.k)
        grad = np.empty(len(x))
        for m in range(len(x)):
            dK = np.asarray(dS[m][self.i], dtype=float) @ inv_power + Si @ dpower[m]
            grad[m] = p @ dK @ p
        return grad


def integral_J(ctx, state, i):
    """
    J_i^k(x, p) = ⟨S_i L^{−k} p, p⟩

    Args:
        ctx (HierarchyContext): 层级上下文
        state (PhasePoint): 相空间点
        i (int): 下标 0..d−1

    Returns:
        float: 积分值

    Raises:
        SingularL: k > 0 且 L 奇异
    """
    return JIntegral(ctx, i).value(state.x, state.p)


def integral_I(ctx, state, i, f_i):
    """
    含势积分 I_i^k = J_i^k + 2 f_i(x)

    Args:
        f_i: 提供 value(x) 的标量场（见 potentials.companion.solve_f）
    """
    return integral_J(ctx, state, i) + 2.0 * float(f_i.value(state.x))


def poisson_bracket(F, G, state):
    """
    典则 Poisson 括号 Σ (∂_x F · ∂_p G − ∂_p F · ∂_x G)，使用解析梯度
    """
    x, p = state.x, state.p
    return float(F.grad_x(x, p) @ G.grad_p(x, p) - F.grad_p(x, p) @ G.grad_x(x, p))


def _fd_gradients(F, x, p, h):
    d = len(x)
    gx = np.empty(d)
    gp = np.empty(d)
    for m in range(d):
        e = np.zeros(d)
        e[m] = h
        gx[m] = (F.value(x + e, p) - F.value(x - e, p)) / (2 * h)
        gp[m] = (F.value(x, p + e) - F.value(x, p - e)) / (2 * h)
    return gx, gp


def poisson_bracket_fd(F, G, state, h=FD_STEP):
    """中心差分版本，只用 value"""
    x, p = state.x, state.p
    fx, fp = _fd_gradients(F, x, p, h)
    gx, gp = _fd_gradients(G, x, p, h)
    return float(fx @ gp - fp @ gx)


def gradient_matrix(functions, state):
    """行为 (∂_x F, ∂_p F) 的矩阵"""
    return np.array([np.concatenate([F.grad_x(state.x, state.p), F.grad_p(state.x, state.p)]) for F in functions])


def independence_measure(functions, state):
    """行归一化梯度矩阵的最小奇异值"""
    M = gradient_matrix(functions, state)
    M = M / np.linalg.norm(M, axis=1)[:, None]
    return float(np.linalg.svd(M, compute_uv=False)[-1])
