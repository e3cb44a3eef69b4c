# -*- coding: utf-8 -*-
"""
共焦二次曲面族的基本类型

    ConfocalFamily   - 参数 b_1 > ... > b_d > 0，定义 Λ 与共焦族 Σ x_i²/(b_i − t) = 1
    BoundaryQuadric  - 台球边界 Γ = Q_c, 0 < c < b_d
    EllipticCoords   - 椭圆坐标 λ_1,...,λ_d
    CausticSet       - 直线的 d−1 个焦散参数（含重数）

所有类型构造后不可变，可在线程间共享。
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from billiards.errors import NonStrictFamily, OutsideModel, BadParameter
from billiards.exact import is_exact, format_number, read_number


@dataclass(frozen=True)
class ConfocalFamily:
    """
    共焦族 Σ x_i²/(b_i − t) = 1

    Args:
        b: d 个半轴参数（长度的平方），严格递减
        symmetric: 为 True 时允许相等参数（仅用于模拟，不能建立椭圆坐标）
    """

    b: tuple
    symmetric: bool = False

    def __post_init__(self):
        b = tuple(self.b)
        object.__setattr__(self, 'b', b)
        if len(b) < 2:
            raise NonStrictFamily(f"维数必须 ≥ 2, 实际为 {len(b)}")
        if any(v <= 0 for v in b):
            raise NonStrictFamily(f"参数 b 必须全部为正: {b}")
        for left, right in zip(b, b[1:]):
            if left < right or (left == right and not self.symmetric):
                raise NonStrictFamily(f"参数 b 必须严格递减: {b}")

    @property
    def d(self):
        return len(self.b)

    @property
    def exact(self):
        return is_exact(list(self.b))

    @property
    def strict(self):
        return all(left > right for left, right in zip(self.b, self.b[1:]))

    def require_strict(self):
        if not self.strict:
            raise NonStrictFamily(f"椭圆坐标要求 b 严格递减: {self.b}")

    def b_array(self):
        return np.array([float(v) for v in self.b])

    def B(self):
        """对角矩阵 B = diag(b_1, ..., b_d)"""
        return np.diag(self.b_array())

    def gamma(self, x, lam):
        """
        γ(λ) = Σ x_i²/(b_i − λ)

        Args:
            x: 点的坐标
            lam: 参数 λ

        Returns:
            float | Fraction: γ 的值（输入全部精确时为精确值）
        """
        if is_exact(list(x)) and is_exact(lam) and self.exact:
            return sum(Fraction(xi) ** 2 / (Fraction(bi) - lam) for xi, bi in zip(x, self.b))
        x = np.asarray(x, dtype=float)
        return float(np.sum(x ** 2 / (self.b_array() - float(lam))))

    def model_f(self, x):
        """f = 1 − Σ x_i²/b_i，Λ 内部为正"""
        x = np.asarray(x, dtype=float)
        return 1.0 - float(np.sum(x ** 2 / self.b_array()))

    def require_inside(self, x):
        f = self.model_f(x)
        if f <= 0:
            raise OutsideModel(f"点 {tuple(np.asarray(x, dtype=float))} 不在 Λ 内部 (f = {f:.3e})")
        return f

    def scaled(self, s):
        """整体位似 b ↦ s·b"""
        return ConfocalFamily(tuple(s * v for v in self.b), symmetric=self.symmetric)

    def to_dict(self):
        return {'d': self.d, 'b': [format_number(v) for v in self.b]}


@dataclass(frozen=True)
class BoundaryQuadric:
    """
    台球边界 Γ: Σ x_i²/(b_i − c) = 1

    Args:
        family: 共焦族
        c: 共焦平移参数，0 < c < b_d
    """

    family: ConfocalFamily
    c: object

    def __post_init__(self):
        if not (0 < self.c < self.family.b[-1]):
            raise BadParameter('c', f"需要 0 < c < b_d = {format_number(self.family.b[-1])}")

    @property
    def d(self):
        return self.family.d

    def axes_squared(self):
        """Γ 的半轴平方 b_i − c（浮点）"""
        return self.family.b_array() - float(self.c)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return float(np.sum(x ** 2 / self.axes_squared()))

    def normal(self, x):
        """边界函数梯度的一半，即欧氏法向余向量 x_i/(b_i − c)"""
        return np.asarray(x, dtype=float) / self.axes_squared()

    def project(self, x):
        """沿径向把点拉回到 Γ 上（消除累积舍入）"""
        x = np.asarray(x, dtype=float)
        return x / np.sqrt(self.value(x))

    def to_dict(self):
        data = self.family.to_dict()
        data['c'] = format_number(self.c)
        return data


@dataclass(frozen=True)
class EllipticCoords:
    """
    椭圆坐标 λ_1 > ... > λ_d，与 b 交错排列

    degenerate 为 True 表示点位于对称超平面上，某些 λ 与 b 重合。
    """

    lam: tuple
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'lam', tuple(self.lam))

    def as_array(self):
        return np.array([float(v) for v in self.lam])


@dataclass(frozen=True)
class CausticSet:
    """
    直线的焦散参数

    Args:
        params: d−1 个参数（降序，含重数）
        degenerate_flags: 每个参数是否与某个 b_i 重合（退化为对称超平面）
        polynomial: 清分母后的首一多项式系数（按降幂），精确输入时为 Fraction
    """

    params: tuple
    degenerate_flags: tuple
    polynomial: tuple = field(default=())

    @property
    def degenerate(self):
        return any(self.degenerate_flags)

    def as_array(self):
        return np.array([float(v) for v in self.params])


def geometry_document(family=None, boundary=None, ellipsoid=None):
    """
    把几何参数序列化为 JSON 文本，键为 {d, b[], a[], mu[], c}

    Args:
        family: ConfocalFamily
        boundary: BoundaryQuadric（提供时覆盖 family）
        ellipsoid: MinkowskiEllipsoid

    Returns:
        str: JSON 文本，有理数写作 "p/q"
    """
    doc = {}
    if boundary is not None:
        doc.update(boundary.to_dict())
    elif family is not None:
        doc.update(family.to_dict())
    if ellipsoid is not None:
        doc.update(ellipsoid.to_dict())
    return json.dumps(doc, indent=2, sort_keys=True)


def read_geometry_document(text):
    """
    读取 geometry_document 写出的文本

    Returns:
        dict: 可能包含 family / boundary / ellipsoid 三个键
    """
    from billiards.confocal.minkowski import MinkowskiEllipsoid

    doc = json.loads(text)
    result = {}
    if 'b' in doc:
        family = ConfocalFamily(tuple(read_number(v) for v in doc['b']))
        result['family'] = family
        if 'c' in doc:
            result['boundary'] = BoundaryQuadric(family, read_number(doc['c']))
    if 'a' in doc:
        result['ellipsoid'] = MinkowskiEllipsoid(
            tuple(read_number(v) for v in doc['a']),
            tuple(read_number(v) for v in doc.get('mu', [])),
        )
    return result
