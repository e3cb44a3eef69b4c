# -*- coding: utf-8 -*-
"""
Minkowski 模型 → Beltrami-Klein 模型

双曲面 ⟨ξ,ξ⟩ = −1 上的椭球 −ξ_0²/a_0 + Σ ξ_i²/a_i = 0 经 y_i = ξ_i/ξ_0 与
x_i = α_i y_i 变到 Λ 内部。取 α_i² = b_i = c·a_0/(a_0 − a_i) 时：
    Λ:  Σ x_i²/b_i = 1                         (绝对形)
    Γ:  Σ x_i²/(b_i − c) = 1                   (μ = 0)
    焦散 (4) 的像:  Σ x_i²/(b_i − t(μ)) = 1,   t(μ) = c·a_0/(a_0 − μ)
这些关系在构造时通过直接代入逐一验证。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from billiards.confocal.family import ConfocalFamily, BoundaryQuadric
from billiards.errors import OrderingViolated, ZeroParameter, BadParameter
from billiards.exact import is_exact, format_number

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinkowskiEllipsoid:
    """
    Lobachevsky 空间中的椭球 (3) 与焦散参数 (4)

    Args:
        a: a_0 > a_1 ≥ ... ≥ a_d > 0
        mu: d−1 个焦散参数，均不为 0
    """

    a: tuple
    mu: tuple = ()

    def __post_init__(self):
        a = tuple(self.a)
        mu = tuple(self.mu)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'mu', mu)
        if len(a) < 3:
            raise OrderingViolated(f"至少需要 a_0, a_1, a_2，实际为 {a}")
        if any(v <= 0 for v in a):
            raise OrderingViolated(f"a 必须全部为正: {a}")
        if not a[0] > a[1]:
            raise OrderingViolated(f"需要 a_0 > a_1: {a}")
        for left, right in zip(a[1:], a[2:]):
            if left < right:
                raise OrderingViolated(f"需要 a_1 ≥ a_2 ≥ ... ≥ a_d: {a}")
        if mu and len(mu) != len(a) - 2:
            raise BadParameter('mu', f"需要 d−1 = {len(a) - 2} 个焦散参数，实际为 {len(mu)}")
        if any(m == 0 for m in mu):
            raise ZeroParameter("焦散参数 μ = 0 即边界本身")

    @property
    def d(self):
        return len(self.a) - 1

    @property
    def exact(self):
        return is_exact(list(self.a) + list(self.mu))

    def with_mu(self, mu):
        return MinkowskiEllipsoid(self.a, tuple(mu))

    def scaled(self, s):
        return MinkowskiEllipsoid(tuple(s * v for v in self.a), tuple(s * v for v in self.mu))

    def to_dict(self):
        return {
            'd': self.d,
            'a': [format_number(v) for v in self.a],
            'mu': [format_number(v) for v in self.mu],
        }


@dataclass(frozen=True)
class KleinImage:
    """
    minkowski_to_klein 的结果

    Args:
        family: Λ 的共焦族
        boundary: Γ
        a0: a_0，用于焦散映射
    """

    family: ConfocalFamily
    boundary: BoundaryQuadric
    a0: object

    @property
    def c(self):
        return self.boundary.c

    def caustic_map(self, mu):
        """t(μ) = c·a_0/(a_0 − μ)"""
        return self.c * self.a0 / (self.a0 - mu)

    def caustics(self, mu_values):
        return tuple(self.caustic_map(m) for m in mu_values)

    def __iter__(self):
        # 允许 family, boundary, caustic_map = minkowski_to_klein(E)
        return iter((self.family, self.boundary, self.caustic_map))


def _coefficient(a0, ai, mu):
    """像二次曲面中 x_i² 的系数 (a_0 − μ) / (b_i (a_i − μ)) 去掉 b_i 之前的部分"""
    return (a0 - mu) / (ai - mu)


def minkowski_to_klein(E, c=1):
    """
    把 Minkowski 模型中的椭球映到 Beltrami-Klein 模型

    Args:
        E (MinkowskiEllipsoid): 椭球与焦散
        c: Γ 的共焦平移参数，默认 1

    Returns:
        KleinImage: 共焦族、边界与焦散映射

    Raises:
        OrderingViolated: a 严格有序而 b 不严格有序
        BadParameter: c ≤ 0
    """
    if not c > 0:
        raise BadParameter('c', "需要 c > 0")
    a0 = E.a[0]
    exact = E.exact and is_exact(c)
    if exact:
        a0 = Fraction(a0)
        c = Fraction(c)
    b = tuple(c * a0 / (a0 - ai) for ai in E.a[1:])

    strict_a = all(left > right for left, right in zip(E.a[1:], E.a[2:]))
    strict_b = all(left > right for left, right in zip(b, b[1:]))
    if strict_a and not strict_b:
        raise OrderingViolated(f"由严格有序的 a 得到的 b 不严格有序: {b}")
    family = ConfocalFamily(b, symmetric=not strict_a)
    image = KleinImage(family, BoundaryQuadric(family, c), a0)

    for mu in (0,) + tuple(E.mu):
        verify_confocality(E, image, mu)
    _logger.debug("Klein 像: b = %s, c = %s", b, c)
    return image


def verify_confocality(E, image, mu):
    """
    直接代入验证：(4) 在参数 μ 下的像 Σ x_i² (a_0 − μ)/(b_i (a_i − μ)) = 1
    与共焦二次曲面 Σ x_i²/(b_i − t(μ)) = 1 的系数逐项相等

    Raises:
        OrderingViolated: 系数不相等（映射公式不成立）
    """
    t = image.caustic_map(mu)
    for ai, bi in zip(E.a[1:], image.family.b):
        if ai == mu:
            # 情形 (i): 焦散退化为超平面 x_i = 0，系数无定义
            continue
        lhs = _coefficient(image.a0, ai, mu) / bi
        rhs = 1 / (bi - t) if bi != t else None
        if rhs is None:
            raise OrderingViolated(f"μ = {mu} 的像退化")
        if is_exact(lhs) and is_exact(rhs):
            ok = lhs == rhs
        else:
            ok = abs(float(lhs) - float(rhs)) <= 1e-12 * max(1.0, abs(float(rhs)))
        if not ok:
            raise OrderingViolated(f"μ = {mu} 的像与 Λ 不共焦: {lhs} ≠ {rhs}")


def verify_confocality_symbolic(E, c=1):
    """
    对自由参数 μ 做多项式恒等式验证

    Returns:
        bool: 所有坐标上的恒等式成立
    """
    mu = sympy.Symbol('mu')
    a0 = sympy.nsimplify(E.a[0])
    c = sympy.nsimplify(c)
    t = c * a0 / (a0 - mu)
    for ai in E.a[1:]:
        ai = sympy.nsimplify(ai)
        bi = c * a0 / (a0 - ai)
        identity = (a0 - mu) / (bi * (ai - mu)) - 1 / (bi - t)
        if sympy.simplify(sympy.together(identity)) != 0:
            return False
    return True


def minkowski_point_to_klein(image, xi):
    """
    双曲面上的点 ξ → Klein 坐标 x_i = sqrt(b_i) ξ_i/ξ_0

    Args:
        image (KleinImage): minkowski_to_klein 的结果
        xi: (ξ_0, ξ_1, ..., ξ_d)

    Returns:
        numpy.ndarray: Λ 内部的点
    """
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(image.family.b_array()) * xi[1:] / xi[0]
