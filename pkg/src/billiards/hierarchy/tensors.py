# -*- coding: utf-8 -*-
"""
张量 L = B − x⊗x 与 S_0, ..., S_{d−1}

    Σ_l S_l α^l = det(L + αI) · (L + αI)⁻¹

S 由 Faddeev-LeVerrier 递推得到（A = −L）：
    M_1 = I,  c_{d−k} = −tr(A M_k)/k,  M_{k+1} = A M_k + c_{d−k} I,  S_{d−k} = M_k
有理输入时全程精确（numpy object 数组存放 Fraction）。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from billiards.exact import is_exact

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HierarchyContext:
    """
    Args:
        family (ConfocalFamily): 提供 B = diag(b)
        k (int): 层级指标，可为负
    """

    family: object
    k: int = 0

    @property
    def d(self):
        return self.family.d

    def exact_for(self, x):
        return self.family.exact and is_exact(list(x))

    def L(self, x):
        """L(x) = B − x⊗x；有理输入返回 Fraction 的 object 数组"""
        if self.exact_for(x):
            b = [Fraction(v) for v in self.family.b]
            xs = [Fraction(v) for v in x]
            d = len(b)
            L = np.empty((d, d), dtype=object)
            for i in range(d):
                for j in range(d):
                    L[i, j] = (b[i] if i == j else Fraction(0)) - xs[i] * xs[j]
            return L
        x = np.asarray(x, dtype=float)
        return self.family.B() - np.outer(x, x)


@dataclass(frozen=True)
class STensorSet:
    """
    S_0, ..., S_{d−1}（S_{d−1} = I）以及 det(L + αI) 的系数

    Args:
        S: 矩阵元组，下标即 α 的幂次
        charpoly: det(L + αI) 的升幂系数
    """

    S: tuple
    charpoly: tuple

    def __getitem__(self, i):
        return self.S[i]

    def __len__(self):
        return len(self.S)

    def adjugate_at(self, alpha):
        """Σ_l S_l α^l"""
        total = self.S[0] * 1
        for l in range(1, len(self.S)):
            total = total + self.S[l] * alpha ** l
        return total


def _identity_like(L):
    d = L.shape[0]
    if L.dtype == object:
        eye = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                eye[i, j] = Fraction(int(i == j))
        return eye
    return np.eye(d)


def faddeev_leverrier(L, dL=None):
    """
    返回 (M 列表, 特征多项式系数, M 的方向导数列表)

    dL 给定时同时做前向求导。
    """
    d = L.shape[0]
    A = -L
    eye = _identity_like(L)
    M = [eye]
    dM = [eye * 0] if dL is not None else None
    dA = -dL if dL is not None else None
    # det(αI − A) 的系数，c[d] = 1
    c = [None] * (d + 1)
    c[d] = eye[0, 0] * 0 + 1
    for k in range(1, d + 1):
        AM = A.dot(M[-1])
        c[d - k] = -np.trace(AM) / k
        if dL is not None:
            dAM = dA.dot(M[-1]) + A.dot(dM[-1])
            dc = -np.trace(dAM) / k
        if k < d:
            M.append(AM + c[d - k] * eye)
            if dL is not None:
                dM.append(dAM + dc * eye)
    # det(L + αI) = det(αI − A)
    return M, tuple(c), dM


def inverse_power(L, q):
    """L^{−q}，对 L 连续求解 q 次，不显式求逆"""
    L = np.asarray(L, dtype=float)
    out = np.eye(L.shape[0])
    for _ in range(q):
        out = np.linalg.solve(L, out)
    return out


def char_tensors(ctx, x):
    """
    计算 L 与 S 张量

    Args:
        ctx (HierarchyContext): 层级上下文
        x: 点坐标

    Returns:
        tuple: (L, STensorSet)
    """
    L = ctx.L(x)
    M, charpoly, _ = faddeev_leverrier(L)
    d = ctx.d
    S = tuple(M[d - 1 - l] for l in range(d))
    return L, STensorSet(S, charpoly)


def char_tensors_derivative(ctx, x):
    """
    S 张量对坐标的偏导数

    Returns:
        list: dS[m][l] = ∂S_l/∂x_m（浮点）
    """
    x = np.asarray(x, dtype=float)
    L = ctx.L(x)
    d = ctx.d
    out = []
    for m in range(d):
        e = np.zeros(d)
        e[m] = 1.0
        dL = -(np.outer(e, x) + np.outer(x, e))
        _, _, dM = faddeev_leverrier(L, dL)
        out.append(tuple(dM[d - 1 - l] for l in range(d)))
    return out


def corrected_closed_form(ctx, x, alpha):
    """
    det B_α · ((1 − ⟨B_α⁻¹x, x⟩) B_α⁻¹ + B_α⁻¹x ⊗ B_α⁻¹x),  B_α = B + αI
    """
    x = np.asarray(x, dtype=float)
    b_alpha = ctx.family.b_array() + alpha
    u = x / b_alpha
    q = float(u @ x)
    return float(np.prod(b_alpha)) * ((1.0 - q) * np.diag(1.0 / b_alpha) + np.outer(u, u))


def direct_adjugate(ctx, x, alpha):
    """sympy 精确伴随矩阵 adj(L + αI)"""
    L = ctx.L(x)
    d = ctx.d
    mat = sympy.Matrix(d, d, lambda i, j: sympy.sympify(L[i, j]) + (alpha if i == j else 0))
    return mat.adjugate()


def closed_form_report(ctx, x, alphas=(1, 2, 3)):
    """
    比较 Faddeev-LeVerrier 展开与修正后的闭式表达

    打印出来的闭式中 "B_α⁻¹ ⊗ B_α⁻¹" 不是矩阵，这里只检查 B_α⁻¹x ⊗ B_α⁻¹x 的版本。

    Returns:
        dict: 每个 α 的最大偏差与是否一致
    """
    _, S = char_tensors(ctx, [float(v) for v in x])
    rows = {}
    for alpha in alphas:
        expansion = np.asarray(S.adjugate_at(alpha), dtype=float)
        closed = corrected_closed_form(ctx, x, alpha)
        scale = max(1.0, float(np.max(np.abs(expansion))))
        rows[str(alpha)] = float(np.max(np.abs(expansion - closed))) / scale
    matches = all(v < 1e-10 for v in rows.values())
    _logger.info("闭式对照: %s", 'corrected form matches' if matches else 'mismatch')
    return {'max_relative_error': rows, 'corrected_form_matches': matches, 'printed_form_well_typed': False}
