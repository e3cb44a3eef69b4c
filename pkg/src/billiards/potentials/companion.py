# -*- coding: utf-8 -*-
"""
含势积分的伴随函数 f_i

    ∇f_i = S_i ∇V

V 可分离时右边是梯度场。符号路线对 Laurent 多项式逐坐标求原函数并精确验证；
数值路线沿两条折线积分，闭合回路积分给出可积性检验。
"""

import logging
from dataclasses import dataclass

import numpy as np

from billiards.errors import NotSeparable, BadParameter
from billiards.hierarchy.tensors import char_tensors, faddeev_leverrier
from billiards.potentials.laurent import LaurentPolynomial
from billiards.potentials.separability import family_b

_logger = logging.getLogger(__name__)

# 闭合回路积分的容许值（相对）
LOOP_TOL = 1e-10
# 每段折线的 Gauss-Legendre 节点数
QUADRATURE_NODES = 48


def symbolic_S(ctx):
    """
    S_0, ..., S_{d−1} 的 Laurent 多项式矩阵

    Returns:
        list: 每个元素是 d×d 的 object 数组
    """
    b = family_b(ctx.family)
    d = len(b)
    L = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            entry = -(LaurentPolynomial.variable(i, d) * LaurentPolynomial.variable(j, d))
            if i == j:
                entry = entry + b[i]
            L[i, j] = entry
    M, _, _ = faddeev_leverrier(L)
    return [M[d - 1 - l] for l in range(d)]


def _as_laurent(entry, d):
    if isinstance(entry, LaurentPolynomial):
        return entry
    return LaurentPolynomial.constant(entry, d)


def symbolic_field(ctx, V, i):
    """S_i ∇V，Laurent 多项式向量"""
    d = V.d
    S = symbolic_S(ctx)[i]
    grad = [V.diff(j) for j in range(d)]
    field = []
    for r in range(d):
        acc = LaurentPolynomial.zero(d)
        for c in range(d):
            acc = acc + _as_laurent(S[r, c], d) * grad[c]
        field.append(acc)
    return field


def antiderivative(field):
    """
    梯度场的 Laurent 原函数，常数项为 0

    Raises:
        NotSeparable: 场不是梯度场，或原函数不在 Laurent 类中
    """
    d = len(field)
    f = LaurentPolynomial.zero(d)
    for j in range(d):
        rest = field[j] - f.diff(j)
        for m in range(j):
            if rest.depends_on(m):
                raise NotSeparable(f"∂_{m + 1}F_{j + 1} ≠ ∂_{j + 1}F_{m + 1}，S_i∇V 不是梯度场")
        try:
            f = f + rest.integrate(j)
        except ValueError as exc:
            raise NotSeparable(str(exc))
    for j in range(d):
        if f.diff(j) != field[j]:
            raise NotSeparable(f"原函数的第 {j + 1} 个偏导数与场不一致")
    return f


def numeric_field(ctx, V, i, x):
    _, S = char_tensors(ctx, np.asarray(x, dtype=float))
    return np.asarray(S[i], dtype=float) @ np.asarray(V.gradient(x), dtype=float)


def _segment_integral(field, a, b, nodes, weights):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    delta = b - a
    if not np.any(delta):
        return 0.0
    total = 0.0
    for s, w in zip(nodes, weights):
        total += w * float(field(a + 0.5 * (s + 1.0) * delta) @ delta)
    return 0.5 * total


def coordinate_path(start, end, order):
    """按 order 的顺序逐个坐标从 start 走到 end"""
    point = np.array(start, dtype=float)
    path = [point.copy()]
    for j in order:
        point[j] = float(end[j])
        path.append(point.copy())
    return path


def path_integral(field, path, nodes=QUADRATURE_NODES):
    s, w = np.polynomial.legendre.leggauss(nodes)
    return sum(_segment_integral(field, path[m], path[m + 1], s, w) for m in range(len(path) - 1))


@dataclass(frozen=True)
class CompanionField:
    """
    f_i 的求值器

    Args:
        ctx (HierarchyContext): 层级上下文
        V (LaurentPolynomial): 势
        i (int): 0 起始下标
        symbolic (LaurentPolynomial): 符号原函数，没有时为 None
        base (tuple): 数值积分的基点
    """

    ctx: object
    V: object
    i: int
    symbolic: object = None
    base: tuple = None

    def field(self, x):
        return numeric_field(self.ctx, self.V, self.i, x)

    def _base_for(self, x):
        # 按 x 的符号取基点所在象限，不穿过坐标超平面
        base = np.asarray(self.base, dtype=float)
        signs = np.where(np.asarray(x, dtype=float) < 0, -1.0, 1.0)
        return np.abs(base) * signs

    def value(self, x):
        if self.symbolic is not None:
            return self.symbolic.value(x)
        return path_integral(self.field, coordinate_path(self._base_for(x), x, range(len(x))))

    def gradient(self, x):
        if self.symbolic is not None:
            return self.symbolic.gradient(x)
        return self.field(x)

    def loop_residual(self, x):
        """两条折线积分之差（相对值）"""
        d = len(x)
        base = self._base_for(x)
        forward = path_integral(self.field, coordinate_path(base, x, range(d)))
        backward = path_integral(self.field, coordinate_path(base, x, reversed(range(d))))
        return abs(forward - backward) / max(1.0, abs(forward))


def default_base(V):
    """多项式取原点；含负幂时取各分量为 1/2 的点"""
    return (0.0,) * V.d if V.is_polynomial() else (0.5,) * V.d


def solve_f(ctx, V, i, check_point=None, base=None):
    """
    求 ∇f_i = S_i ∇V 的解

    Args:
        ctx (HierarchyContext): 层级上下文
        V (LaurentPolynomial): 势
        i (int): 0 ≤ i ≤ d−1
        check_point: 做回路检验的点，默认取 (0.3, 0.15, 0.1, ...)
        base: 数值积分基点，默认见 default_base

    Returns:
        CompanionField: 含符号原函数（可得时）的求值器

    Raises:
        NotSeparable: 回路积分或符号检验失败
    """
    d = V.d
    if not 0 <= i < d:
        raise BadParameter('i', f"需要 0 ≤ i < {d}")
    base = tuple(base) if base is not None else default_base(V)
    if check_point is None:
        check_point = [0.3 / (m + 1) for m in range(d)]
    draft = CompanionField(ctx, V, i, None, base)
    loop = draft.loop_residual(np.asarray(check_point, dtype=float))
    _logger.debug("f_%d 回路积分残差 %.3e", i, loop)
    if loop > LOOP_TOL:
        raise NotSeparable(f"S_{i}∇V 的回路积分残差 {loop:.3e} 超过 {LOOP_TOL:g}")
    symbolic = antiderivative(symbolic_field(ctx, V, i)) if ctx.family.exact else None
    return CompanionField(ctx, V, i, symbolic, base)
